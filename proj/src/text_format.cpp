#include "jetstress/polynomial.hpp"
#include "jetstress/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace jetstress {
namespace {

bool all_digits(const std::string& s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

Rational parse_rational(const std::string& raw)
{
    std::string text = trim(raw);
    bool negative = false;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        negative = text[0] == '-';
        text = trim(text.substr(1));
    }
    Rational value;
    auto slash = text.find('/');
    auto dot = text.find('.');
    if (slash != std::string::npos) {
        std::string num = trim(text.substr(0, slash));
        std::string den = trim(text.substr(slash + 1));
        if (!all_digits(num) || !all_digits(den)) throw DomainError("bad rational '" + raw + "'");
        mpz_class d(den, 10);
        if (d == 0) throw DomainError("zero denominator in '" + raw + "'");
        value = Rational(mpz_class(num, 10), d);
        value.canonicalize();
    } else if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) throw DomainError("bad decimal '" + raw + "'");
        mpz_class scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        value = Rational(mpz_class(whole + frac, 10), scale);
        value.canonicalize();
    } else {
        if (!all_digits(text)) throw DomainError("bad number '" + raw + "'");
        value = Rational(mpz_class(text, 10));
    }
    return negative ? Rational(-value) : value;
}

std::string format_scalar(const Rational& x) { return x.get_str(); }

std::string format_scalar(double x)
{
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <Scalar T>
std::string Polynomial<T>::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool negative = c < 0;
        T magnitude = negative ? T(-c) : c;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        out += format_scalar(magnitude);
        std::string mono;
        for (int k = 0; k < dim_; ++k) {
            int power = e[static_cast<std::size_t>(k)];
            if (power == 0) continue;
            if (!mono.empty()) mono += " ";
            mono += "X" + std::to_string(k + 1);
            if (power != 1) mono += "^" + std::to_string(power);
        }
        if (!mono.empty()) out += " * " + mono;
    }
    return out;
}

template std::string Polynomial<Rational>::to_string() const;
template std::string Polynomial<double>::to_string() const;

RPoly parse_polynomial(const std::string& text, int dim)
{
    RPoly result(dim);
    // Split into signed terms at top-level '+' / '-'.
    std::vector<std::pair<bool, std::string>> terms;
    std::string current;
    bool negative = false;
    bool seen_content = false;
    for (char c : text) {
        if ((c == '+' || c == '-') && seen_content) {
            terms.emplace_back(negative, current);
            current.clear();
            negative = (c == '-');
            seen_content = false;
        } else if ((c == '+' || c == '-') && !seen_content) {
            if (c == '-') negative = !negative;
        } else {
            if (!std::isspace(static_cast<unsigned char>(c))) seen_content = true;
            current += c;
        }
    }
    if (seen_content) {
        terms.emplace_back(negative, current);
    } else if (!terms.empty() || !trim(current).empty() || negative) {
        throw DomainError("polynomial: dangling sign in '" + text + "'");
    }
    if (terms.empty()) throw DomainError("polynomial: empty expression");

    for (auto& [neg, raw] : terms) {
        // Tokens separated by whitespace or '*'.
        std::vector<std::string> tokens;
        std::string tok;
        for (char c : raw) {
            if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
                if (!tok.empty()) tokens.push_back(tok);
                tok.clear();
            } else {
                tok += c;
            }
        }
        if (!tok.empty()) tokens.push_back(tok);
        if (tokens.empty()) throw DomainError("polynomial: empty term in '" + text + "'");

        Rational coef = 1;
        Exponent e{};
        for (const auto& t : tokens) {
            if (t[0] == 'X' || t[0] == 'x') {
                auto caret = t.find('^');
                std::string axis_str = t.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
                std::string power_str = caret == std::string::npos ? "1" : t.substr(caret + 1);
                if (!all_digits(axis_str) || !all_digits(power_str)) {
                    throw DomainError("polynomial: bad factor '" + t + "'");
                }
                int axis = std::stoi(axis_str);
                int power = std::stoi(power_str);
                if (axis < 1 || axis > dim) {
                    throw DomainError("polynomial: variable X" + axis_str + " outside n = " + std::to_string(dim));
                }
                int total = e[static_cast<std::size_t>(axis - 1)] + power;
                if (total > 255) throw DomainError("polynomial: exponent too large");
                e[static_cast<std::size_t>(axis - 1)] = static_cast<std::uint8_t>(total);
            } else {
                coef *= parse_rational(t);
            }
        }
        result.add_term(e, neg ? Rational(-coef) : coef);
    }
    return result;
}

}  // namespace jetstress
