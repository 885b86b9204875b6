#include "wgof/rules.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wgof {

namespace {

double parse_number(const std::string& s, const std::string& whole)
{
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("bad number '" + s + "' in rate rule '" + whole + "'");
    }
    return v;
}

std::string fmt(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double RateRule::operator()(double n) const
{
    double r = c * std::pow(n, a);
    if (b != 0.0) {
        r *= std::pow(std::log(n), b);
    }
    if (d != 0.0) {
        r *= std::pow(std::log(std::log(n)), d);
    }
    return r;
}

std::string RateRule::to_string() const
{
    if (!name.empty()) {
        return name;
    }
    std::string out = fmt(c);
    if (a != 0.0) {
        out += "*n^" + fmt(a);
    }
    if (b != 0.0) {
        out += "*log(n)^" + fmt(b);
    }
    if (d != 0.0) {
        out += "*loglog(n)^" + fmt(d);
    }
    return out;
}

RateRule RateRule::parse(const std::string& text)
{
    if (text == "o") {
        return kappa_o();
    }
    if (text == "star") {
        return kappa_star();
    }
    if (text.empty()) {
        throw std::invalid_argument("empty rate rule");
    }
    RateRule r;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find('*', pos);
        const std::string factor = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        const std::size_t caret = factor.find('^');
        const std::string base = factor.substr(0, caret);
        const double e = caret == std::string::npos ? 1.0 : parse_number(factor.substr(caret + 1), text);
        if (base == "n") {
            r.a += e;
        } else if (base == "log(n)" || base == "logn") {
            r.b += e;
        } else if (base == "loglog(n)" || base == "loglogn") {
            r.d += e;
        } else {
            r.c *= std::pow(parse_number(base, text), e);
        }
        if (next == std::string::npos) {
            break;
        }
        pos = next + 1;
    }
    return r;
}

RateRule RateRule::kappa_o()
{
    return {0.5, -0.5, 0.0, 0.0, "o"};
}

RateRule RateRule::kappa_star()
{
    return {1.0, -0.9, 0.0, 0.0, "star"};
}

RateRule RateRule::operator*(const RateRule& o) const
{
    return {c * o.c, a + o.a, b + o.b, d + o.d, {}};
}

RateRule RateRule::operator/(const RateRule& o) const
{
    return {c / o.c, a - o.a, b - o.b, d - o.d, {}};
}

RateRule RateRule::pow(double e) const
{
    return {std::pow(c, e), a * e, b * e, d * e, {}};
}

int limit_direction(const RateRule& r)
{
    if (r.a != 0.0) {
        return sign(r.a);
    }
    if (r.b != 0.0) {
        return sign(r.b);
    }
    return sign(r.d);
}

}  // namespace wgof
