/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/control_codes.hpp"

namespace mwpaug {

std::string_view code_name(ControlCode code) {
  switch (code) {
    case ControlCode::Orig: return "orig";
    case ControlCode::Add: return "add";
    case ControlCode::Mul: return "mul";
    case ControlCode::Sol: return "sol";
    case ControlCode::Equ: return "equ";
    case ControlCode::Var: return "var";
  }
  return "?";
}

std::string_view code_token(ControlCode code) {
  switch (code) {
    case ControlCode::Orig: return "<orig>";
    case ControlCode::Add: return "<add>";
    case ControlCode::Mul: return "<mul>";
    case ControlCode::Sol: return "<sol>";
    case ControlCode::Equ: return "<equ>";
    case ControlCode::Var: return "<var>";
  }
  return "?";
}

std::string_view code_description(ControlCode code, Lang lang) {
  if (lang == Lang::Zh) {
    switch (code) {
      case ControlCode::Orig: return "原始形式";
      case ControlCode::Add: return "加法交换律";
      case ControlCode::Mul: return "乘法交换律";
      case ControlCode::Sol: return "以解形式表达";
      case ControlCode::Equ: return "交换方程组算式";
      case ControlCode::Var: return "交换未知量";
    }
    return "?";
  }
  switch (code) {
    case ControlCode::Orig: return "Original Form";
    case ControlCode::Add: return "Swap addition operands";
    case ControlCode::Mul: return "Swap multiplication operands";
    case ControlCode::Sol: return "Solution form";
    case ControlCode::Equ: return "Swap equation order sequentially";
    case ControlCode::Var: return "Swap unknown variables order sequentially";
  }
  return "?";
}

std::optional<ControlCode> code_from_name(std::string_view name) {
  for (ControlCode code : kAllCodes)
    if (name == code_name(code) || name == code_token(code)) return code;
  return std::nullopt;
}

}  // namespace mwpaug
