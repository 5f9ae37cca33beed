#include <cstdio>
#include <cstdlib>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
    acceptance::SuiteOptions opts;
    if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
    int failed = 0;
    for (const auto& r : acceptance::run_all(opts)) {
        std::printf("%s\n", acceptance::format_line(r).c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
