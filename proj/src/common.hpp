#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hypercell {

// Error categories surfaced through the C API as distinct status codes.
enum class ErrorCode {
    InvalidArgument,
    Degenerate,
    Unsupported,
    InsufficientData,
    NonTermination,
    Exhausted,
    Numeric,
    Io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline constexpr double kPi = 3.14159265358979323846;

// Volume of the unit ball in R^j.
inline double unit_ball_volume(int j) {
    return std::pow(M_PI, 0.5 * j) / std::tgamma(0.5 * j + 1.0);
}

// Surface area of the unit sphere S^{d-1} in R^d.
inline double sphere_area(int d) { return d * unit_ball_volume(d); }

inline std::string to_str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace hypercell
