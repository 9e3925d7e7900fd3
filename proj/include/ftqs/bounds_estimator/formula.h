// Copyright 2026 The ftqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FTQS_BOUNDS_ESTIMATOR_FORMULA_H
#define FTQS_BOUNDS_ESTIMATOR_FORMULA_H

#include <map>
#include <string>
#include <string_view>

namespace ftqs {

using FormulaVars = std::map<std::string, double, std::less<>>;

/// Evaluates an arithmetic expression over named variables.
///
/// Grammar: numbers, identifiers, + - * / ^ (right associative, binds
/// tighter than unary minus), parentheses, and the functions ln, log2,
/// log10, exp, sqrt, ceil, floor, abs (one argument) and min, max, pow (two).
/// Throws std::invalid_argument on syntax errors or unknown names.
double eval_formula(std::string_view expr, const FormulaVars &vars);

}  // namespace ftqs

#endif
