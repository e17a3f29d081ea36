#pragma once

#include "jetstress/stress.hpp"

#include <map>
#include <optional>
#include <string>

namespace jetstress {

/// `dim=2 fiber=1 domain=[0,1]x[0,1]` header fields.
struct ConfigHeader {
    int dim = 0;
    int fiber = 0;
    int order = -1;  ///< -1 when absent
    RBox domain;
};

/// Section file: header `dim=n fiber=m domain=[...]`, then `w[alpha] = <polynomial>`.
SectionField<Rational> parse_section_text(const std::string& text);

/// Stress file: header `dim=n fiber=m order=r domain=[...]`, then
/// `S[alpha] = ...`, `S[alpha][I] = ...` (symmetric I, any order accepted) or,
/// for non-holonomic stresses, `S[alpha]{p=binary}[I] = ...` with full I.
struct StressFile {
    ConfigHeader header;
    std::optional<StressDensity<Rational>> holonomic;
    std::optional<NonHolonomicStressDensity<Rational>> nonholonomic;
};
StressFile parse_stress_text(const std::string& text);

std::string read_text_file(const std::string& path);

/// Round-trip writers in the same formats.
std::string section_to_text(const SectionField<Rational>& w);
std::string stress_to_text(const StressDensity<Rational>& s);
std::string stress_to_text(const NonHolonomicStressDensity<Rational>& s);

}  // namespace jetstress
