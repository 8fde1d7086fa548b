// SPDX-License-Identifier: Apache-2.0
//
// mrpchan - monostatic background radio channel simulator with multi-reference-point composition
// Copyright (C) 2026 mrpchan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.
// ------------------------------------------------------------------------

#pragma once

#include <map>
#include <string>

namespace mrpchan
{

/*!
 * Evaluates an arithmetic expression string.
 *
 * Supported grammar: binary <tt>+ - * /</tt>, right-associative <tt>^</tt>, unary minus,
 * parentheses, decimal literals, named variables, and the functions
 * <tt>log10, log, sqrt, exp, min, max</tt>. Used by the config reader so that
 * frequency-dependent scenario parameters can be written as formulas, e.g.
 * <tt>"-0.28 * log10(1 + fc) - 7.173"</tt> with <tt>fc</tt> in GHz.
 *
 * @param text        Expression to evaluate.
 * @param variables   Name/value bindings visible to the expression.
 * @return Evaluated value.
 * @throws std::runtime_error on a syntax error or an unknown name.
 */
double eval_expression(const std::string& text, const std::map<std::string, double>& variables);

} // namespace mrpchan
