#ifndef LGPOLY_VERIFY_HPP
#define LGPOLY_VERIFY_HPP

#include <string>
#include <vector>

namespace lgp::verify {

struct Check {
    std::string criterion_id; // "1", "1b", ...
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
};

// Runs the full acceptance suite; one Check per sub-measurement.
std::vector<Check> run_all();

// Convenience: all checks of criterion `id` (the numeric prefix) passed.
bool criterion_passed(const std::vector<Check>& checks, int id);

} // namespace lgp::verify

#endif
