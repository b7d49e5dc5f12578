#pragma once

#include <string>
#include <vector>

namespace mdz::verify {

struct CheckRow {
    std::string id;       // "1", "2", ... acceptance criterion number
    std::string name;
    bool pass = false;
    double measured = 0;  // deviation actually observed
    double threshold = 0;
    double seconds = 0;
};

// suites: oracles (1,2,3,4,6,7), partition (8), quadrature (5), all (1..11)
std::vector<CheckRow> run_suite(const std::string& suite, bool quick);

}  // namespace mdz::verify
