#pragma once
#include <stdexcept>
#include <string>

namespace cycfuse {

enum class errc {
  composite_characteristic,
  field_too_large,
  index_out_of_range,
  not_coprime,
  even_modulus,
  not_squarefree,
  no_solution,
  ambiguous_solution,
  bad_divisor,
  minus_one_not_in_c0,
  unsupported_case,
  no_conjugate_matches,
  both_conjugates_match,
  bad_partition,
  field_mismatch,
  odd_extension_degree,
  overflow,
  parse_error,
};

constexpr const char* errc_name(errc c) {
  switch (c) {
    case errc::composite_characteristic: return "CompositeCharacteristic";
    case errc::field_too_large: return "FieldTooLarge";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::not_coprime: return "NotCoprime";
    case errc::even_modulus: return "EvenN";
    case errc::not_squarefree: return "NotSquarefree";
    case errc::no_solution: return "NoSolution";
    case errc::ambiguous_solution: return "AmbiguousSolution";
    case errc::bad_divisor: return "BadDivisor";
    case errc::minus_one_not_in_c0: return "MinusOneNotInC0";
    case errc::unsupported_case: return "UnsupportedCase";
    case errc::no_conjugate_matches: return "NoConjugateMatches";
    case errc::both_conjugates_match: return "BothMatch";
    case errc::bad_partition: return "BadPartition";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::odd_extension_degree: return "OddF";
    case errc::overflow: return "Overflow";
    case errc::parse_error: return "ParseError";
  }
  return "Error";
}

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace cycfuse
