/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mwpaug {

/// The six augmentation control codes. Orig marks the untransformed
/// canonical form; the other five name the rewrite that produced a variant.
enum class ControlCode : unsigned char { Orig, Add, Mul, Sol, Equ, Var };

inline constexpr std::array<ControlCode, 6> kAllCodes{
    ControlCode::Orig, ControlCode::Add, ControlCode::Mul,
    ControlCode::Sol,  ControlCode::Equ, ControlCode::Var};

/// Emission order of the transforming codes (orig always comes first).
inline constexpr std::array<ControlCode, 5> kTransformOrder{
    ControlCode::Add, ControlCode::Mul, ControlCode::Sol, ControlCode::Equ,
    ControlCode::Var};

enum class Lang : unsigned char { En, Zh };

std::string_view code_name(ControlCode code);   // "orig", "add", ...
std::string_view code_token(ControlCode code);  // "<orig>", "<add>", ...
std::string_view code_description(ControlCode code, Lang lang);

/// Accepts either the bare name ("add") or the token form ("<add>").
std::optional<ControlCode> code_from_name(std::string_view name);

}  // namespace mwpaug
