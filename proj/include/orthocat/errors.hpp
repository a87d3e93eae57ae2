#pragma once

#include <stdexcept>
#include <string>

namespace orthocat {

// Machine-readable failure codes.  The CLI prints name() verbatim in its
// "error" field, so these strings are part of the external interface.
enum class errc {
  zero_alpha,
  zero_index,
  zero_d,
  wrong_region,
  not_quantized,
  ambiguous_quantization,
  degenerate_real_part,
  degenerate_phi1,
  truncation_too_small,
  degenerate_state,
  verification_failed,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_alpha: return "ZeroAlpha";
    case errc::zero_index: return "ZeroIndex";
    case errc::zero_d: return "ZeroD";
    case errc::wrong_region: return "WrongRegion";
    case errc::not_quantized: return "NotQuantized";
    case errc::ambiguous_quantization: return "AmbiguousQuantization";
    case errc::degenerate_real_part: return "DegenerateRealPart";
    case errc::degenerate_phi1: return "DegeneratePhi1";
    case errc::truncation_too_small: return "TruncationTooSmall";
    case errc::degenerate_state: return "DegenerateState";
    case errc::verification_failed: return "VerificationFailed";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

class solver_error : public std::runtime_error {
 public:
  solver_error(errc code, const std::string& what)
      : std::runtime_error(what), m_code(code) {}

  errc code() const { return m_code; }
  const char* name() const { return errc_name(m_code); }

 private:
  errc m_code;
};

}  // namespace orthocat
