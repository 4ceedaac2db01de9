#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "moyal/element.hpp"

namespace moyal {

/**
 * Recursive-descent parser for the element grammar
 *
 *   element := sum
 *   sum     := product (("+" | "-") product)*
 *   product := factor ("*" factor)*          juxtaposition also multiplies
 *   factor  := complex | monomial | wave | "(" sum ")" | "-" factor
 *   monomial:= "x" index ("^" nat)?
 *   wave    := "W[" real ("," real)* "]"     exactly D components
 *   complex := real | real "i" | "(" real ("+" | "-") real "i" ")"
 *
 * Products between factors are ordinary (pointwise) products: an expression
 * denotes a function, and star products are taken by the caller.
 */
class ExpressionParser {
public:
    ExpressionParser(StructurePtr s, std::string_view text) : s_(std::move(s)), text_(text) {}

    MoyalElement parse()
    {
        skip_ws();
        if (at_end()) fail("empty expression");
        MoyalElement e = sum();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const { throw ParseError(what, pos + 1); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool starts_factor() const
    {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == 'W' || c == '(';
    }

    MoyalElement sum()
    {
        MoyalElement acc = product();
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc += product();
            else if (accept('-'))
                acc -= product();
            else
                return acc;
        }
    }

    MoyalElement product()
    {
        MoyalElement acc = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                acc = pointwise(acc, factor());
            } else if (starts_factor()) {
                acc = pointwise(acc, factor());
            } else {
                return acc;
            }
        }
    }

    MoyalElement factor()
    {
        skip_ws();
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == 'x') return monomial();
        if (c == 'W') return wave();
        if (c == '(') {
            const std::size_t save = pos_;
            if (auto z = try_complex_literal()) return MoyalElement::constant(s_, *z);
            pos_ = save;
            ++pos_;
            MoyalElement inner = sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const double v = real();
            if (peek() == 'i') {
                ++pos_;
                return MoyalElement::constant(s_, Complex(0.0, v));
            }
            return MoyalElement::constant(s_, v);
        }
        if (at_end()) fail("unexpected end of expression");
        fail(std::string("unexpected '") + c + "'");
    }

    /// "(" real ("+"|"-") real "i" ")"; returns nothing (without consuming) if the text is not of that form.
    std::optional<Complex> try_complex_literal()
    {
        ++pos_;  // '('
        skip_ws();
        const auto re = try_real(true);
        if (!re) return std::nullopt;
        skip_ws();
        const char sign = peek();
        if (sign != '+' && sign != '-') return std::nullopt;
        ++pos_;
        skip_ws();
        const auto im = try_real(false);
        if (!im || peek() != 'i') return std::nullopt;
        ++pos_;
        skip_ws();
        if (peek() != ')') return std::nullopt;
        ++pos_;
        return Complex(*re, sign == '-' ? -*im : *im);
    }

    std::optional<double> try_real(bool allow_sign)
    {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        if (allow_sign && p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
        const std::size_t digits_start = p;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        }
        if (p == digits_start || (p == digits_start + 1 && text_[digits_start] == '.')) return std::nullopt;
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '-' || text_[q] == '+')) ++q;
            const std::size_t exp_digits = q;
            while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
            if (q > exp_digits) p = q;
        }
        std::string_view number = text_.substr(start, p - start);
        if (!number.empty() && number.front() == '+') number.remove_prefix(1);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), v);
        if (ec != std::errc() || end != number.data() + number.size() || !std::isfinite(v)) return std::nullopt;
        pos_ = p;
        return v;
    }

    double real(bool allow_sign = false)
    {
        skip_ws();
        if (auto v = try_real(allow_sign)) return *v;
        fail("expected a number");
    }

    int natural(const char* what)
    {
        skip_ws();
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) fail(std::string("expected ") + what);
        int v = 0;
        const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc()) fail_at(std::string(what) + " out of range", start);
        (void)end;
        return v;
    }

    MoyalElement monomial()
    {
        const std::size_t start = pos_;
        ++pos_;  // 'x'
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a coordinate index");
        const int index = natural("coordinate index");
        if (index < 1) fail_at("coordinate index must be at least 1", start);
        if (index > s_->dimension())
            fail_at("coordinate index " + std::to_string(index) + " exceeds dimension " +
                        std::to_string(s_->dimension()),
                    start);
        int power = 1;
        skip_ws();
        if (accept('^')) power = natural("exponent");
        std::vector<int> alpha(static_cast<std::size_t>(s_->dimension()), 0);
        alpha[static_cast<std::size_t>(index - 1)] = power;
        return MoyalElement::monomial(s_, std::move(alpha));
    }

    MoyalElement wave()
    {
        const std::size_t start = pos_;
        ++pos_;  // 'W'
        if (peek() != '[') fail("expected '[' after W");
        ++pos_;
        std::vector<double> k{real(true)};
        while (accept(',')) k.push_back(real(true));
        expect(']');
        if (k.size() != static_cast<std::size_t>(s_->dimension()))
            fail_at("wave vector has " + std::to_string(k.size()) + " components, expected " +
                        std::to_string(s_->dimension()),
                    start);
        return MoyalElement::plane_wave(s_, std::move(k));
    }

    StructurePtr s_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline MoyalElement parse_expression(const StructurePtr& s, std::string_view text)
{
    return ExpressionParser(s, text).parse();
}

/// Shortest decimal form that round-trips the double exactly.
inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

/// Canonical text: terms in key order, each "(re+imi) x1^a ... W[k1,...]", joined by " + ".
inline std::string print_expression(const MoyalElement& e)
{
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : e.terms()) {
        if (!first) out += " + ";
        first = false;
        const double re = c.real() == 0.0 ? 0.0 : c.real();
        const double im = c.imag() == 0.0 ? 0.0 : c.imag();
        out += "(" + format_real(re) + (im < 0.0 ? "-" : "+") + format_real(std::abs(im)) + "i)";
        for (std::size_t i = 0; i < key.alpha.size(); ++i) {
            if (key.alpha[i] == 0) continue;
            out += " x" + std::to_string(i + 1);
            if (key.alpha[i] != 1) out += "^" + std::to_string(key.alpha[i]);
        }
        if (key.has_wave()) {
            out += " W[";
            for (std::size_t i = 0; i < key.k.size(); ++i) out += (i ? "," : "") + format_real(key.k[i]);
            out += "]";
        }
    }
    return out;
}

/// One term per line: "re im | alpha_1 ... alpha_D | k_1 ... k_D".
inline std::string serialize(const MoyalElement& e)
{
    std::string out;
    for (const auto& [key, c] : e.terms()) {
        out += format_real(c.real()) + " " + format_real(c.imag()) + " |";
        for (int a : key.alpha) out += " " + std::to_string(a);
        out += " |";
        for (double k : key.k) out += " " + format_real(k);
        out += "\n";
    }
    return out;
}

/// Inverse of serialize. Blank lines and text after '#' are ignored.
inline MoyalElement deserialize(const StructurePtr& s, std::string_view text)
{
    const auto d = static_cast<std::size_t>(s->dimension());
    MoyalElement out(s);
    std::istringstream lines{std::string(text)};
    std::string line;
    int lineno = 0;
    const auto bad = [&](const std::string& what) {
        return ParseError("line " + std::to_string(lineno) + ": " + what, 0);
    };
    while (std::getline(lines, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const auto bar = line.find('|', start);
            fields.push_back(line.substr(start, bar - start));
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        if (fields.size() != 3) throw bad("expected 're im | alpha | k'");
        std::istringstream coeff(fields[0]), alpha_in(fields[1]), k_in(fields[2]);
        double re = 0.0, im = 0.0;
        if (!(coeff >> re >> im) || !(coeff >> std::ws).eof()) throw bad("malformed coefficient");
        std::vector<int> alpha;
        for (int a; alpha_in >> a;) alpha.push_back(a);
        if (!alpha_in.eof() || alpha.size() != d) throw bad("expected " + std::to_string(d) + " exponents");
        std::vector<double> k;
        for (double v; k_in >> v;) k.push_back(v);
        if (!k_in.eof() || k.size() != d) throw bad("expected " + std::to_string(d) + " wave components");
        for (int a : alpha)
            if (a < 0) throw bad("negative exponent");
        out.accumulate(TermKey{std::move(alpha), std::move(k)}, Complex(re, im));
    }
    out.prune();
    return out;
}

}  // namespace moyal
