#ifndef GMUSIC_ERRORS_HPP
#define GMUSIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gmusic {

// Least-squares solve rejected because the system matrix is numerically
// rank deficient. Carries the offending ratio sigma_min/sigma_max.
class ill_conditioned_error : public std::runtime_error {
public:
    ill_conditioned_error(double ratio, const std::string& what)
        : std::runtime_error(what), ratio_(ratio) {}
    double condition_ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

// Grid initialization could not find enough admissible candidates; the
// input subspace is too far from any Fourier subspace.
class initialization_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Frequency estimation collapsed duplicates and could not re-seed back up
// to the requested cardinality.
class estimation_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Automatic rank detection returned zero.
class no_signal_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Subspace estimation requested with n < 2r.
class identifiability_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The quasi-random frequency generator rejected too many draws in a row.
class generator_infeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gmusic

#endif
