#include "graftlab/strata.hpp"

#include "graftlab/signs.hpp"

#include <stdexcept>

namespace graftlab {

std::optional<int> stratum_dim(const StratumType& d) {
  if (d.n < 0 || d.k.empty() || d.l.empty()) return std::nullopt;
  const int v = vertex_count(d.k) + vertex_count(d.l);
  if (d.n >= 1) return d.n - 1 + v;
  if (symmetry_dim(d.k, d.l) != 1) return std::nullopt;
  return v - 1;
}

StratumType glue(const StratumType& upper, const StratumType& lower) {
  return {lower.n + upper.n, glue(upper.k, lower.k), glue(lower.l, upper.l)};
}

std::vector<TypeSplitting> type_splittings(const StratumType& d) {
  std::vector<TypeSplitting> out;
  if (!is_nonempty(d)) return out;
  for (int n0 = 0; n0 <= d.n; ++n0) {
    for (const Splitting& ks : cached_splittings(d.k)) {
      for (const Splitting& ls : cached_splittings(d.l)) {
        StratumType lower{n0, ks.lower, ls.upper};
        StratumType upper{d.n - n0, ks.upper, ls.lower};
        if (is_nonempty(lower) && is_nonempty(upper)) out.push_back({std::move(lower), std::move(upper)});
      }
    }
  }
  return out;
}

int gluing_orientation(const StratumType& lower, const StratumType& upper) {
  return gluing_orientation(lower.n, lower.k, lower.l, upper.n, upper.k, upper.l);
}

SimplexStratum labelled(const StratumType& d) {
  SimplexStratum s{{}, d.k, d.l};
  for (int i = 0; i <= d.n; ++i) s.sigma.push_back(i);
  return s;
}

std::string to_string(const StratumType& d) {
  return "(" + std::to_string(d.n) + ";" + to_string(d.k) + ";" + to_string(d.l) + ")";
}

std::string to_string(const SimplexStratum& s) {
  std::string out = "J{";
  for (std::size_t i = 0; i < s.sigma.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.sigma[i]);
  }
  return out + ";" + to_string(s.k) + ";" + to_string(s.l) + "}";
}

std::string to_string(const StratumLabel& label) {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) out += " x ";
    out += to_string(label[i]);
  }
  return out;
}

std::vector<SignedStratum> boundary(const SimplexStratum& d) {
  if (!is_nonempty(d.type())) throw std::invalid_argument("boundary of the empty stratum " + to_string(d));
  std::vector<SignedStratum> out;
  const int m = d.n();
  for (int i = 1; i <= m - 1; ++i) {
    SimplexStratum face = d;
    face.sigma.erase(face.sigma.begin() + i);
    out.push_back({{std::move(face)}, i & 1});
  }
  for (int i = 0; i <= m; ++i) {
    std::vector<int> below(d.sigma.begin(), d.sigma.begin() + i + 1);
    std::vector<int> above(d.sigma.begin() + i, d.sigma.end());
    for (const Splitting& ks : cached_splittings(d.k)) {
      for (const Splitting& ls : cached_splittings(d.l)) {
        SimplexStratum lower{below, ks.lower, ls.upper};
        SimplexStratum upper{above, ks.upper, ls.lower};
        if (!is_nonempty(lower.type()) || !is_nonempty(upper.type())) continue;
        int sign = gluing_orientation(lower.type(), upper.type());
        out.push_back({{std::move(lower), std::move(upper)}, sign});
      }
    }
  }
  return out;
}

std::vector<SignedStratum> boundary(const StratumType& d) { return boundary(labelled(d)); }

int label_dim(const StratumLabel& label) {
  int total = 0;
  for (const auto& f : label) {
    auto dim = stratum_dim(f.type());
    if (!dim) throw std::logic_error("empty factor in label " + to_string(label));
    total += *dim;
  }
  return total;
}

std::vector<SignedStratum> boundary(const StratumLabel& label) {
  std::vector<SignedStratum> out;
  int dims_below = 0;
  for (std::size_t j = 0; j < label.size(); ++j) {
    for (SignedStratum& piece : boundary(label[j])) {
      StratumLabel spliced(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(j));
      spliced.insert(spliced.end(), piece.label.begin(), piece.label.end());
      spliced.insert(spliced.end(), label.begin() + static_cast<std::ptrdiff_t>(j) + 1, label.end());
      out.push_back({std::move(spliced), parity(piece.sign + dims_below)});
    }
    dims_below += *stratum_dim(label[j].type());
  }
  return out;
}

DdZeroReport check_dd_zero(const StratumType& d) {
  auto dim = stratum_dim(d);
  if (!dim) throw std::invalid_argument("check_dd_zero: empty stratum " + to_string(d));
  if (*dim < 2) throw std::invalid_argument("check_dd_zero: dimension < 2 for " + to_string(d));
  std::map<StratumLabel, int> tally;
  for (const SignedStratum& face : boundary(labelled(d))) {
    for (const SignedStratum& face2 : boundary(face.label)) {
      tally[face2.label] += (parity(face.sign + face2.sign) ? -1 : 1);
    }
  }
  DdZeroReport report{d, true, tally.size(), {}};
  for (const auto& [label, count] : tally) {
    if (count != 0) {
      report.pass = false;
      report.offending.emplace_back(label, count);
    }
  }
  return report;
}

std::vector<StratumType> dd_zero_domain(int max_n, int max_leaves, int max_dim) {
  std::vector<StratumType> out;
  const auto indices = multi_indices_up_to(max_leaves);
  for (int n = 0; n <= max_n; ++n)
    for (const auto& k : indices)
      for (const auto& l : indices) {
        StratumType d{n, k, l};
        auto dim = stratum_dim(d);
        if (dim && *dim >= 2 && *dim <= max_dim) out.push_back(std::move(d));
      }
  return out;
}

}  // namespace graftlab
