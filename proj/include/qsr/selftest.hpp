#ifndef QSR_SELFTEST_HPP
#define QSR_SELFTEST_HPP

#include <ostream>

namespace qsr {

/// Runs the ten acceptance criteria, printing one PASS/FAIL line per criterion.
/// Returns the number of failed criteria.
int run_acceptance(std::ostream& out);

}  // namespace qsr

#endif
