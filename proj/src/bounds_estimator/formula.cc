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

#include "ftqs/bounds_estimator/formula.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ftqs {

namespace {

class Parser {
   public:
    Parser(std::string_view s, const FormulaVars &vars) : s_(s), vars_(vars) {
    }

    double parse() {
        double v = expr();
        skip();
        if (pos_ != s_.size()) {
            error("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return v;
    }

   private:
    [[noreturn]] void error(const std::string &msg) const {
        throw std::invalid_argument("formula '" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            pos_++;
        }
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            pos_++;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) {
                v = v + term();
            } else if (eat('-')) {
                v = v - term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = unary();
        for (;;) {
            if (eat('*')) {
                v = v * unary();
            } else if (eat('/')) {
                v = v / unary();
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (eat('-')) {
            return -unary();
        }
        if (eat('+')) {
            return unary();
        }
        return power();
    }

    double power() {
        double base = primary();
        if (eat('^')) {
            return std::pow(base, unary());
        }
        return base;
    }

    double primary() {
        skip();
        if (pos_ >= s_.size()) {
            error("unexpected end");
        }
        char c = s_[pos_];
        if (c == '(') {
            pos_++;
            double v = expr();
            if (!eat(')')) {
                error("expected ')'");
            }
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
            if (ec != std::errc()) {
                error("bad number");
            }
            pos_ = size_t(ptr - s_.data());
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
                pos_++;
            }
            std::string_view name = s_.substr(start, pos_ - start);
            if (eat('(')) {
                return call(name);
            }
            auto it = vars_.find(name);
            if (it == vars_.end()) {
                pos_ = start;
                error("unknown variable '" + std::string(name) + "'");
            }
            return it->second;
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    double call(std::string_view name) {
        std::vector<double> args;
        if (!eat(')')) {
            do {
                args.push_back(expr());
            } while (eat(','));
            if (!eat(')')) {
                error("expected ')' after arguments");
            }
        }
        auto want = [&](size_t n) {
            if (args.size() != n) {
                error(std::string(name) + " takes " + std::to_string(n) + " argument(s)");
            }
        };
        if (name == "min" || name == "max" || name == "pow") {
            want(2);
            if (name == "pow") {
                return std::pow(args[0], args[1]);
            }
            return name == "min" ? std::min(args[0], args[1]) : std::max(args[0], args[1]);
        }
        want(1);
        double x = args[0];
        if (name == "ln") return std::log(x);
        if (name == "log2") return std::log2(x);
        if (name == "log10") return std::log10(x);
        if (name == "exp") return std::exp(x);
        if (name == "sqrt") return std::sqrt(x);
        if (name == "ceil") return std::ceil(x);
        if (name == "floor") return std::floor(x);
        if (name == "abs") return std::abs(x);
        error("unknown function '" + std::string(name) + "'");
    }

    std::string_view s_;
    const FormulaVars &vars_;
    size_t pos_ = 0;
};

}  // namespace

double eval_formula(std::string_view expr, const FormulaVars &vars) {
    return Parser(expr, vars).parse();
}

}  // namespace ftqs
