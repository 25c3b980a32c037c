#pragma once

#include <stdexcept>
#include <string>

namespace rmk3 {

// Every failure condition the library distinguishes. CLI maps Error to
// exit code 2; mathematical mismatches (sweep failures) are data, not errors.
enum class errc {
    not_prime,
    even_characteristic,
    degree_out_of_range,
    field_mismatch,
    division_by_zero,
    non_square,
    order_unavailable,
    excluded_characteristic,
    bad_parameter,
    degenerate_arrangement,
    budget_exceeded,
    wrong_family,
    normalization_mismatch,
    ambiguous_sign,
    inconsistent_counts,
    non_integral_coefficients,
    rank_jump_at_unity,
    trivial_transcendental,
    rank_mismatch,
    unsupported_degree,
    not_transcendental,
    cache_corrupt,
    cache_conflict,
    internal_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rmk3
