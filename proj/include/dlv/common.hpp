#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dlv {

enum class errc {
    not_prime,
    reducible_modulus,
    dimension_mismatch,
    ring_mismatch,
    non_unit_leading_coeff,
    no_qth_root,
    bound_too_small,
    kernel_not_stable,
    not_additive,
    not_monic,
    not_a_field,
    not_m_structure,
    not_additive_divisor,
    not_subscheme,
    not_divisible,
    not_adapted,
    extension_bound_exceeded,
    no_witness,
    invalid_subsimplex,
    length_mismatch,
    unsupported_mu,
    syntax_error,
    unknown_name,
    type_mismatch,
    unsupported,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

const char* errc_name(errc code);

} // namespace dlv
