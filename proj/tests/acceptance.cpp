// Runs the full acceptance suite and prints one line per criterion.
#include <cstdio>

#include "seqspace/verify.hpp"

int main() {
    bool all = true;
    for (const auto& r : seqspace::run_acceptance_suite()) {
        std::printf("AC-%d %-30s %s (%.2fs)%s%s\n", r.id, r.name.c_str(),
                    r.pass ? "pass" : "FAIL", r.seconds, r.detail.empty() ? "" : " - ",
                    r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
