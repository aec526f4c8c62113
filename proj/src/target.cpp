#include "mtype/target.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mtype/errors.hpp"
#include "mtype/neumaier.hpp"

namespace mtype {

namespace {

// Absolute slack allowed on "values sum to one".  Matches what survives a round
// trip of decimal probability text through binary floating point.
constexpr double kSumTolerance = 1e-9;

// Hard cap on materialized prefix length, to keep family truncation from
// absorbing unbounded memory.
constexpr std::size_t kMaterializeGuard = 10'000'000;

double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Entry i (1-based) of the Yule-Simon family: rho * B(i, rho + 1).  Computed in
// log space; direct Gamma ratios overflow long before i = 10^4.
double yule_entry(double rho, double i) {
  return std::exp(std::log(rho) + lbeta(i, rho + 1.0));
}

// Yule-Simon mass beyond index k, in closed form: k * B(k, rho + 1).
double yule_tail(double rho, double k) {
  return std::exp(std::log(k) + lbeta(k, rho + 1.0));
}

std::size_t parse_size_param(const std::string& text, const std::string& family) {
  std::size_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("family '" + family + "' needs an integer parameter, got '" + text + "'");
  }
  return value;
}

double parse_real_param(const std::string& text, const std::string& family) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("family '" + family + "' needs a numeric parameter, got '" + text + "'");
  }
  return value;
}

void identity_order(Target& t) {
  t.original_order.resize(t.probs.size());
  std::iota(t.original_order.begin(), t.original_order.end(), std::size_t{0});
  t.original_size = t.probs.size();
}

Target make_uniform(std::size_t n) {
  if (n < 1) throw std::invalid_argument("uniform family needs at least one entry");
  if (n > kMaterializeGuard) throw GuardExceeded("uniform family size exceeds the materialization guard");
  Target t;
  t.probs.assign(n, 1.0 / static_cast<double>(n));
  identity_order(t);
  return t;
}

Target make_geometric(double ratio, std::size_t want) {
  if (!(ratio > 0.0) || !(ratio < 1.0)) {
    throw std::invalid_argument("geometric ratio must lie strictly between 0 and 1");
  }
  Target t;
  t.probs.reserve(want);
  double cur = 1.0 - ratio;
  for (std::size_t i = 0; i < want && cur > 0.0; ++i) {
    t.probs.push_back(cur);
    cur *= ratio;
  }
  // Mass beyond n entries is ratio^n exactly; underflow to zero simply means the
  // tail is smaller than the smallest subnormal.
  t.tail_mass = std::pow(ratio, static_cast<double>(t.probs.size()));
  identity_order(t);
  return t;
}

Target make_yule_simon(double rho, std::size_t want) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("yule-simon rho must be positive and finite");
  }
  Target t;
  t.probs.reserve(want);
  for (std::size_t i = 1; i <= want; ++i) {
    t.probs.push_back(yule_entry(rho, static_cast<double>(i)));
  }
  t.tail_mass = yule_tail(rho, static_cast<double>(want));
  identity_order(t);
  return t;
}

// Adversarial blocked family: block i >= 1 holds 2^(2^i - i - 1) entries of value
// 2^(1 - 2^i), so each block carries total mass 2^(-i).  All requested blocks are
// materialized completely; if the caller needs a longer prefix, later blocks are
// cut mid-block, which keeps the entries non-increasing and the tail analytic.
Target make_adversarial(std::size_t blocks, std::size_t want) {
  if (blocks < 1) throw std::invalid_argument("adversarial family needs at least one block");
  Target t;
  std::size_t block_index = 0;
  while (true) {
    ++block_index;
    const std::size_t i = block_index;
    const long long width = (1LL << std::min<std::size_t>(i, 62)) - static_cast<long long>(i) - 1;
    // Block populations explode past the guard quickly; saturate instead of shifting out of range.
    const unsigned long long block_count =
        (width >= 62) ? static_cast<unsigned long long>(kMaterializeGuard) + 1
                      : (1ULL << width);
    const double value = (i <= 60) ? std::ldexp(1.0, 1 - (1LL << i)) : 0.0;
    unsigned long long take = block_count;
    if (i > blocks) {
      const std::size_t still_needed = want > t.probs.size() ? want - t.probs.size() : 0;
      take = std::min<unsigned long long>(block_count, still_needed);
    }
    if (t.probs.size() + take > kMaterializeGuard) {
      throw GuardExceeded("adversarial family materialization exceeds the length guard");
    }
    t.probs.insert(t.probs.end(), static_cast<std::size_t>(take), value);
    if (take < block_count) {
      // Cut mid-block: remaining mass is the whole-tail 2^(1-i) minus what we kept.
      t.tail_mass = std::ldexp(1.0, -static_cast<long long>(i - 1)) -
                    static_cast<double>(take) * value;
      break;
    }
    if (i >= blocks && t.probs.size() >= want) {
      t.tail_mass = std::ldexp(1.0, -static_cast<long long>(i));
      break;
    }
  }
  identity_order(t);
  return t;
}

}  // namespace

FamilySpec uniform_family(std::size_t n) {
  FamilySpec s;
  s.kind = FamilyKind::uniform;
  s.int_param = n;
  return s;
}

FamilySpec geometric_family(double ratio) {
  FamilySpec s;
  s.kind = FamilyKind::geometric;
  s.real_param = ratio;
  return s;
}

FamilySpec yule_simon_family(double rho) {
  FamilySpec s;
  s.kind = FamilyKind::yule_simon;
  s.real_param = rho;
  return s;
}

FamilySpec adversarial_family(std::size_t blocks) {
  FamilySpec s;
  s.kind = FamilyKind::adversarial;
  s.int_param = blocks;
  return s;
}

Target make_target(const std::vector<double>& values, bool normalize) {
  if (values.empty()) throw std::invalid_argument("target needs at least one value");
  NeumaierSum sum;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("target values must be finite and non-negative");
    }
    sum.add(v);
  }
  const double total = sum.value();
  if (!(total > 0.0)) throw std::invalid_argument("target needs at least one positive value");
  if (!normalize && std::abs(total - 1.0) > kSumTolerance) {
    throw std::invalid_argument("target values sum to " + std::to_string(total) +
                                ", not 1 (pass normalize to rescale)");
  }
  const double scale = normalize ? 1.0 / total : 1.0;

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  Target t;
  t.original_size = values.size();
  for (std::size_t idx : order) {
    if (values[idx] > 0.0) {
      t.probs.push_back(values[idx] * scale);
      t.original_order.push_back(idx);
    }
  }
  return t;
}

Target make_family(const FamilySpec& spec, std::size_t M_hint) {
  if (M_hint < 1) throw std::invalid_argument("family materialization needs M_hint >= 1");
  const std::size_t want = std::max<std::size_t>({2 * M_hint, spec.min_length, std::size_t{1}});
  if (want > kMaterializeGuard) {
    throw GuardExceeded("requested prefix length exceeds the materialization guard");
  }
  switch (spec.kind) {
    case FamilyKind::uniform:
      return make_uniform(spec.int_param);
    case FamilyKind::geometric:
      return make_geometric(spec.real_param, want);
    case FamilyKind::yule_simon:
      return make_yule_simon(spec.real_param, want);
    case FamilyKind::adversarial:
      return make_adversarial(spec.int_param, want);
    case FamilyKind::explicit_values:
      throw std::invalid_argument("explicit targets are built with make_target, not make_family");
  }
  throw std::invalid_argument("unknown family kind");
}

double tail_mass_at(const Target& t, std::size_t k) {
  if (k > t.n()) throw std::out_of_range("prefix length exceeds the materialized entries");
  NeumaierSum s;
  for (std::size_t i = k; i < t.n(); ++i) s.add(t.probs[i]);
  s.add(t.tail_mass);
  return s.value();
}

Target prefix_target(const Target& t, std::size_t k) {
  if (k < 1 || k > t.n()) throw std::out_of_range("prefix length must lie in [1, n]");
  Target p;
  p.probs.assign(t.probs.begin(), t.probs.begin() + static_cast<std::ptrdiff_t>(k));
  p.tail_mass = tail_mass_at(t, k);
  identity_order(p);
  return p;
}

FamilySpec parse_family(const std::string& shorthand) {
  const auto colon = shorthand.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= shorthand.size()) {
    throw ParseError("family shorthand must look like name:param, e.g. yule-simon:0.2");
  }
  std::string name = shorthand.substr(0, colon);
  const std::string param = shorthand.substr(colon + 1);
  for (char& c : name) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '_') c = '-';
  }
  if (name == "uniform") return uniform_family(parse_size_param(param, name));
  if (name == "geometric") return geometric_family(parse_real_param(param, name));
  if (name == "yule-simon") return yule_simon_family(parse_real_param(param, name));
  if (name == "adversarial") return adversarial_family(parse_size_param(param, name));
  throw ParseError("unknown family '" + name +
                   "' (known: uniform, geometric, yule-simon, adversarial)");
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::explicit_values: return "explicit";
    case FamilyKind::uniform: return "uniform";
    case FamilyKind::geometric: return "geometric";
    case FamilyKind::yule_simon: return "yule-simon";
    case FamilyKind::adversarial: return "adversarial";
  }
  return "unknown";
}

std::vector<double> parse_probability_lines(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    if (token[0] == '#') continue;
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
      throw ParseError("line " + std::to_string(lineno) + ": cannot parse probability '" +
                       token + "'");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace mtype
