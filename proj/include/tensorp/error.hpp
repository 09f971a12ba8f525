#pragma once

#include <stdexcept>
#include <string>

namespace tensorp {

enum class errc {
  invalid_rotation,
  not_symmetric,
  not_invertible,
  negative_determinant,
  non_positive_eigenvalue,
  singular_moment,
  no_convergence,
  hemisphere_violation,
  antipodal_pair,
  not_spd,
  empty_data_set,
  out_of_domain,
  parse_error,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_rotation: return "invalid_rotation";
    case errc::not_symmetric: return "not_symmetric";
    case errc::not_invertible: return "not_invertible";
    case errc::negative_determinant: return "negative_determinant";
    case errc::non_positive_eigenvalue: return "non_positive_eigenvalue";
    case errc::singular_moment: return "singular_moment";
    case errc::no_convergence: return "no_convergence";
    case errc::hemisphere_violation: return "hemisphere_violation";
    case errc::antipodal_pair: return "antipodal_pair";
    case errc::not_spd: return "not_spd";
    case errc::empty_data_set: return "empty_data_set";
    case errc::out_of_domain: return "out_of_domain";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tensorp
