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

#include "mrpchan/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mrpchan
{

namespace
{

// Recursive-descent parser over a flat character buffer.
class Parser
{
  public:
    Parser(const std::string& text, const std::map<std::string, double>& vars)
        : text_(text), vars_(vars)
    {
    }

    double run()
    {
        const double v = sum();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return v;
    }

  private:
    // sum := product (('+' | '-') product)*
    double sum()
    {
        double v = product();
        for (;;)
        {
            skip_ws();
            if (consume('+'))
                v += product();
            else if (consume('-'))
                v -= product();
            else
                return v;
        }
    }

    // product := power (('*' | '/') power)*
    double product()
    {
        double v = power();
        for (;;)
        {
            skip_ws();
            if (consume('*'))
                v *= power();
            else if (consume('/'))
                v /= power();
            else
                return v;
        }
    }

    // power := unary ('^' power)?   (right-associative)
    double power()
    {
        const double base = unary();
        skip_ws();
        if (consume('^'))
            return std::pow(base, power());
        return base;
    }

    // unary := '-' unary | atom
    double unary()
    {
        skip_ws();
        if (consume('-'))
            return -unary();
        return atom();
    }

    // atom := number | name ('(' args ')')? | '(' sum ')'
    double atom()
    {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of expression");

        const char c = text_[pos_];
        if (c == '(')
        {
            ++pos_;
            const double v = sum();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return name();
        fail(std::string("unexpected character '") + c + "'");
    }

    double number()
    {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin)
            fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    double name()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string id = text_.substr(start, pos_ - start);

        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(')
        {
            ++pos_;
            const double a = sum();
            skip_ws();
            if (consume(','))
            {
                const double b = sum();
                expect(')');
                if (id == "min")
                    return std::fmin(a, b);
                if (id == "max")
                    return std::fmax(a, b);
                fail("unknown two-argument function '" + id + "'");
            }
            expect(')');
            if (id == "log10")
                return std::log10(a);
            if (id == "log")
                return std::log(a);
            if (id == "sqrt")
                return std::sqrt(a);
            if (id == "exp")
                return std::exp(a);
            fail("unknown function '" + id + "'");
        }

        const auto it = vars_.find(id);
        if (it == vars_.end())
            fail("unknown variable '" + id + "'");
        return it->second;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        skip_ws();
        if (!consume(c))
            fail(std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::runtime_error("expression error at offset " + std::to_string(pos_) + " in \"" +
                                 text_ + "\": " + what);
    }

    const std::string& text_;
    const std::map<std::string, double>& vars_;
    std::size_t pos_ = 0;
};

} // namespace

double eval_expression(const std::string& text, const std::map<std::string, double>& variables)
{
    return Parser(text, variables).run();
}

} // namespace mrpchan
