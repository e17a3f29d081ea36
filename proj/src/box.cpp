#include "jetstress/box.hpp"

#include <cctype>

namespace jetstress {

Face Face::parse(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("face: expected `i:lo` or `i:hi`, got `" + text + "`");
    const std::string axis = text.substr(0, colon);
    const std::string side = text.substr(colon + 1);
    if (axis.empty() || axis.size() > 2 || !std::isdigit(static_cast<unsigned char>(axis[0])) ||
        !std::isdigit(static_cast<unsigned char>(axis.back()))) {
        throw DomainError("face: bad axis in `" + text + "`");
    }
    if (side != "lo" && side != "hi") throw DomainError("face: side must be lo or hi in `" + text + "`");
    Face f{std::stoi(axis), side == "hi"};
    if (f.axis < 1) throw DomainError("face: axis must be >= 1");
    return f;
}

RBox parse_box(const std::string& text)
{
    std::vector<std::pair<Rational, Rational>> intervals;
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_space();
    while (pos < text.size()) {
        if (text[pos] != '[') throw DomainError("box: expected `[` at position " + std::to_string(pos) + " in `" + text + "`");
        const auto close = text.find(']', pos);
        if (close == std::string::npos) throw DomainError("box: unterminated interval in `" + text + "`");
        const std::string inner = text.substr(pos + 1, close - pos - 1);
        const auto comma = inner.find(',');
        if (comma == std::string::npos) throw DomainError("box: interval `[" + inner + "]` needs two bounds");
        intervals.emplace_back(parse_rational(inner.substr(0, comma)), parse_rational(inner.substr(comma + 1)));
        pos = close + 1;
        skip_space();
        if (pos < text.size()) {
            if (text[pos] != 'x' && text[pos] != 'X' && text[pos] != '*') {
                throw DomainError("box: expected `x` between intervals in `" + text + "`");
            }
            ++pos;
            skip_space();
        }
    }
    if (intervals.empty()) throw DomainError("box: no intervals in `" + text + "`");
    return RBox(std::move(intervals));
}

}  // namespace jetstress
