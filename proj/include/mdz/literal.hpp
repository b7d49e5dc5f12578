#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mdz/mdzv.hpp"

namespace mdz {

// malformed CLI/config literals (exit code 1 at the CLI boundary)
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// field: "Q" or "d=<int>"; element: "x,y"; cone: "x,y;x,y"; cones: "|"-separated;
// exponent matrix: rows by ';', entries by ',', complex entries as "re+imj"
QuadField parse_field(const std::string& lit);
FieldElement parse_element(const std::string& lit);
Cone parse_cone(const QuadField& f, const std::string& lit);
std::vector<Cone> parse_cones(const QuadField& f, const std::string& lit);
ExponentMatrix parse_exponents(const std::string& lit);
cplx parse_complex(const std::string& lit);

std::string print_field(const QuadField& f);
std::string print_element(const FieldElement& e);
std::string print_cone(const Cone& c);
std::string print_cones(const std::vector<Cone>& cones);
std::string print_exponents(const ExponentMatrix& m);
std::string print_complex(cplx v);          // shortest round-trip
std::string print_double(double v);         // shortest round-trip
std::string print_double15(double v);       // %.15g (report values)

enum class OutputFormat { json, csv, text };
OutputFormat parse_format(const std::string& s);

struct RunConfig {
    std::string field = "Q";
    std::string cones = "1,0";
    std::string exponents = "2";
    std::int64_t A = 0;
    double tol = 1e-8;
    int threads = 0;  // 0 -> MDZ_THREADS env or 1
    OutputFormat format = OutputFormat::json;

    bool operator==(const RunConfig&) const = default;
};

// INI-style key=value; '#' starts a comment. Flags override file values.
RunConfig load_config_file(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& line);
std::string print_config(const RunConfig& cfg);                 // reparseable key=value block
RunConfig parse_config(const std::string& text);

// builds the evaluation spec from a config (validates literals)
MdzvSpec config_to_spec(const RunConfig& cfg);

}  // namespace mdz
