// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
#include <cstdio>
#include <cstring>
#include <map>

#include "mdz/verify.hpp"

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    auto rows = mdz::verify::run_suite("all", quick);

    std::map<std::string, bool> by_criterion;
    std::map<std::string, double> seconds;
    for (const auto& r : rows) {
        auto [it, fresh] = by_criterion.try_emplace(r.id, true);
        it->second = it->second && r.pass;
        seconds[r.id] += r.seconds;
        std::printf("    %-5s %-70s %s (measured %.3e vs %.1e, %.2fs)\n", r.id.c_str(), r.name.c_str(),
                    r.pass ? "ok" : "FAIL", r.measured, r.threshold, r.seconds);
    }
    bool all = true;
    for (int k = 1; k <= 11; ++k) {
        std::string id = std::to_string(k);
        auto it = by_criterion.find(id);
        if (it == by_criterion.end()) continue;
        all = all && it->second;
        std::printf("[%s] criterion %s (%.1fs)\n", it->second ? "PASS" : "FAIL", id.c_str(), seconds[id]);
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES");
    return all ? 0 : 1;
}
