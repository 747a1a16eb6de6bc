#include "mdist/rational.hpp"

#include <stdexcept>

namespace mdist {

namespace {

bool is_integer_token(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_token(num))
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    if (slash == std::string_view::npos)
        return Rational(BigInt(std::string(num)));
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_token(den) || den.front() == '-')
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(BigInt(std::string(num)), d);
}

std::string format_rational(const Rational& q) {
    return q.str();
}

double approx(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace mdist
