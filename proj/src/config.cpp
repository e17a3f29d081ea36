#include "jetstress/config.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace jetstress {
namespace {

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct Line {
    int number;
    std::string text;
};

// Non-blank lines with `#` comments removed.
std::vector<Line> content_lines(const std::string& text)
{
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string t = trim(raw);
        if (!t.empty()) out.push_back({number, t});
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& what)
{
    throw DomainError("line " + std::to_string(line) + ": " + what);
}

int parse_positive(const std::string& key, const std::string& value, int line)
{
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
        fail(line, key + " must be a non-negative integer, got `" + value + "`");
    }
    return std::stoi(value);
}

ConfigHeader parse_header(const Line& line, bool want_order)
{
    ConfigHeader h;
    std::istringstream in(line.text);
    std::string token;
    std::optional<RBox> domain;
    std::set<std::string> seen;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) fail(line.number, "header token `" + token + "` is not key=value");
        std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        if (!seen.insert(key).second) fail(line.number, "duplicate header key `" + key + "`");
        if (key == "dim") h.dim = parse_positive(key, value, line.number);
        else if (key == "fiber") h.fiber = parse_positive(key, value, line.number);
        else if (key == "order") h.order = parse_positive(key, value, line.number);
        else if (key == "domain") domain = parse_box(value);
        else fail(line.number, "unknown header key `" + key + "`");
    }
    if (h.dim < 1 || h.dim > 5) fail(line.number, "dim must be in 1..5");
    if (h.fiber < 1) fail(line.number, "fiber must be >= 1");
    if (want_order && h.order < 0) fail(line.number, "stress header needs order=r");
    h.domain = domain ? *domain : RBox::unit(h.dim);
    if (h.domain.dim() != h.dim) fail(line.number, "domain has " + std::to_string(h.domain.dim()) + " intervals, dim=" + std::to_string(h.dim));
    return h;
}

std::vector<int> parse_index_list(const std::string& text, int line)
{
    std::vector<int> out;
    std::string t = trim(text);
    if (t.empty()) return out;
    std::istringstream in(t);
    std::string part;
    while (std::getline(in, part, ',')) {
        part = trim(part);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
            fail(line, "bad index entry `" + part + "`");
        }
        out.push_back(std::stoi(part));
    }
    return out;
}

RPoly parse_body(const std::string& body, int dim, int line)
{
    try {
        return parse_polynomial(body, dim);
    } catch (const DomainError& e) {
        fail(line, e.what());
    }
}

}  // namespace

SectionField<Rational> parse_section_text(const std::string& text)
{
    const auto lines = content_lines(text);
    if (lines.empty()) throw DomainError("section file: empty");
    const ConfigHeader h = parse_header(lines.front(), false);
    std::vector<RPoly> comps(static_cast<std::size_t>(h.fiber), RPoly(h.dim));
    std::vector<char> set(comps.size(), 0);
    static const std::regex pattern(R"(w\[(\d+)\]\s*=\s*(.*))");
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::smatch m;
        if (!std::regex_match(lines[k].text, m, pattern)) fail(lines[k].number, "expected `w[alpha] = <polynomial>`");
        int alpha = std::stoi(m[1].str());
        if (alpha < 1 || alpha > h.fiber) fail(lines[k].number, "alpha outside 1..fiber");
        auto& flag = set[static_cast<std::size_t>(alpha - 1)];
        if (flag) fail(lines[k].number, "w[" + std::to_string(alpha) + "] given twice");
        flag = 1;
        comps[static_cast<std::size_t>(alpha - 1)] = parse_body(m[2].str(), h.dim, lines[k].number);
    }
    return SectionField<Rational>(h.domain, std::move(comps));
}

StressFile parse_stress_text(const std::string& text)
{
    const auto lines = content_lines(text);
    if (lines.empty()) throw DomainError("stress file: empty");
    StressFile out;
    out.header = parse_header(lines.front(), true);
    const ConfigHeader& h = out.header;
    static const std::regex pattern(R"(S\[(\d+)\](\{p=([01]+)\})?(\[([^\]]*)\])?\s*=\s*(.*))");

    std::optional<bool> nonholonomic;
    std::set<std::string> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::smatch m;
        const int ln = lines[k].number;
        if (!std::regex_match(lines[k].text, m, pattern)) {
            fail(ln, "expected `S[alpha] = ...`, `S[alpha][I] = ...` or `S[alpha]{p=binary}[I] = ...`");
        }
        const bool nh = m[2].matched;
        if (nonholonomic && *nonholonomic != nh) fail(ln, "cannot mix holonomic and non-holonomic slots");
        if (!nonholonomic) {
            nonholonomic = nh;
            if (nh) out.nonholonomic.emplace(h.domain, h.fiber, h.order);
            else out.holonomic.emplace(h.domain, h.fiber, h.order);
        }
        const int alpha = std::stoi(m[1].str());
        if (alpha < 1 || alpha > h.fiber) fail(ln, "alpha outside 1..fiber");
        std::vector<int> entries = parse_index_list(m[5].str(), ln);
        for (int e : entries) {
            if (e < 1 || e > h.dim) fail(ln, "index entry " + std::to_string(e) + " outside 1..dim");
        }
        RPoly value = parse_body(m[6].str(), h.dim, ln);
        if (nh) {
            BinaryNodeIndex p;
            try {
                p = BinaryNodeIndex::parse(m[3].str());
            } catch (const DomainError& e) {
                fail(ln, e.what());
            }
            if (p.generation() > h.order) fail(ln, "array " + p.to_string() + " has generation above order");
            if (static_cast<int>(entries.size()) != p.arity()) {
                fail(ln, "array " + p.to_string() + " takes " + std::to_string(p.arity()) + " indices");
            }
            MultiIndex index(entries, h.dim);
            std::string key = std::to_string(alpha) + "|" + p.to_string() + "|" + index.to_string();
            if (!seen.insert(key).second) fail(ln, "slot given twice");
            out.nonholonomic->set(p, alpha, index, std::move(value));
        } else {
            if (static_cast<int>(entries.size()) > h.order) fail(ln, "index longer than order");
            NonDecreasingIndex index = sorted(MultiIndex(entries, h.dim));
            std::string key = std::to_string(alpha) + "|" + index.to_string();
            if (!seen.insert(key).second) fail(ln, "slot given twice (indices are symmetric)");
            out.holonomic->set(alpha, index, std::move(value));
        }
    }
    if (!nonholonomic) out.holonomic.emplace(h.domain, h.fiber, h.order);
    return out;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

std::string index_body(const BasicIndex<IndexOrdering::any>& index)
{
    std::string out;
    for (std::size_t k = 0; k < index.entries().size(); ++k) out += (k ? "," : "") + std::to_string(index.entries()[k]);
    return out;
}

}  // namespace

std::string section_to_text(const SectionField<Rational>& w)
{
    std::string out = "dim=" + std::to_string(w.dim()) + " fiber=" + std::to_string(w.fiber()) +
                      " domain=" + w.domain().to_string() + "\n";
    for (int alpha = 1; alpha <= w.fiber(); ++alpha) out += "w[" + std::to_string(alpha) + "] = " + w[alpha].to_string() + "\n";
    return out;
}

std::string stress_to_text(const StressDensity<Rational>& s)
{
    std::string out = "dim=" + std::to_string(s.dim()) + " fiber=" + std::to_string(s.fiber()) +
                      " order=" + std::to_string(s.order()) + " domain=" + s.domain().to_string() + "\n";
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
        for (const auto& [index, value] : s.slots(alpha)) {
            if (value.is_zero()) continue;
            out += "S[" + std::to_string(alpha) + "]";
            if (!index.empty()) out += "[" + index_body(MultiIndex(index.entries(), s.dim())) + "]";
            out += " = " + value.to_string() + "\n";
        }
    }
    return out;
}

std::string stress_to_text(const NonHolonomicStressDensity<Rational>& s)
{
    std::string out = "dim=" + std::to_string(s.dim()) + " fiber=" + std::to_string(s.fiber()) +
                      " order=" + std::to_string(s.order()) + " domain=" + s.domain().to_string() + "\n";
    for (const auto& p : s.labels()) {
        for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
            for (const auto& index : enumerate_multi(s.dim(), p.arity())) {
                const RPoly& value = s.at(p, alpha, index);
                if (value.is_zero()) continue;
                out += "S[" + std::to_string(alpha) + "]{p=" + p.to_string() + "}[" + index_body(index) + "] = " +
                       value.to_string() + "\n";
            }
        }
    }
    return out;
}

}  // namespace jetstress
