#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace mtype {

// A quantization target: strictly positive probabilities in non-increasing order,
// plus the mass lying beyond the materialized prefix (zero for finite support).
// Instances are immutable after construction and safe to share across threads.
struct Target {
  std::vector<double> probs;                // non-increasing, all > 0
  double tail_mass = 0.0;                   // mass beyond probs
  std::vector<std::size_t> original_order;  // sorted position -> index in the caller's input
  std::size_t original_size = 0;            // caller's input length, zero entries included

  std::size_t n() const { return probs.size(); }
};

enum class FamilyKind { explicit_values, uniform, geometric, yule_simon, adversarial };

// Parametric description of a named distribution family.  Infinite-support members
// are materialized to a finite prefix whose length is driven by the precision M the
// caller intends to quantize with (see make_family).
struct FamilySpec {
  FamilyKind kind = FamilyKind::explicit_values;
  double real_param = 0.0;     // geometric: ratio in (0,1); yule_simon: rho > 0
  std::size_t int_param = 0;   // uniform: n; adversarial: number of complete blocks
  std::size_t min_length = 0;  // optional extra floor on the materialized prefix length
};

FamilySpec uniform_family(std::size_t n);
FamilySpec geometric_family(double ratio);
FamilySpec yule_simon_family(double rho);
FamilySpec adversarial_family(std::size_t blocks);

// Build a target from explicit values: sort descending (stable, so equal values keep
// their input order), strip zeros, and record the permutation back to the caller's
// indexing.  With normalize off, the values must already sum to 1 within 1e-9.
Target make_target(const std::vector<double>& values, bool normalize);

// Materialize a named family.  Infinite-support families get a prefix of at least
// 2*M_hint entries — long enough that quantization output cannot depend on where
// the prefix was cut — and an analytically computed tail mass.
Target make_family(const FamilySpec& spec, std::size_t M_hint);

// T_k: target mass beyond the first k entries, tail included.  T_0 = 1.
double tail_mass_at(const Target& t, std::size_t k);

// The first k entries of t as a sub-probability target: same values, all remaining
// mass moved into tail_mass.  Quantizing such a prefix spends the full budget M on
// the k retained entries.
Target prefix_target(const Target& t, std::size_t k);

// Parse "name:param" family shorthand, e.g. "yule-simon:0.2" or "uniform:8".
FamilySpec parse_family(const std::string& shorthand);

// Stable family name for reports and shorthand.
std::string family_name(FamilyKind kind);

// Read one probability per line; blank lines and lines starting with '#' are skipped.
std::vector<double> parse_probability_lines(std::istream& in);

}  // namespace mtype
