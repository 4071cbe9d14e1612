// Orientation of the gluing map J_{D0} x J_{D1} x I -> J_D computed from first principles:
// write the map in coordinates, take its Jacobian (it is affine, so the matrix is constant
// and integral) and read the orientation parity off the sign of the determinant.
//
// Coordinates.
//   J_D with n >= 1: (L_1..L_{n-1}, heights of Vert(k) in natural order, heights of Vert(l)).
//   J_D with n = 0: the quotient of the height space by the diagonal translation, with
//     coordinates p_j - p_1 for j >= 2. Equivalently the slice spanned by e_2..e_d, so that
//     (translation, e_2, .., e_d) is a positive basis of the full height space.
//   Domain: the new grafting length L first, then J_{D0}, then J_{D1}.
// The glued point: D0 stays put, D1 is lifted by the total height below it. When a factor has
// no grafting level the new length is absorbed by translating that factor instead.

#include "graftlab/strata.hpp"

#include <stdexcept>

namespace graftlab {

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

// Sign of det via fraction-free Gaussian elimination. Entries stay integral.
int determinant_sign(Matrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  __int128 prev = 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  const __int128 det = a[n - 1][n - 1];
  if (det == 0) return 0;
  return det > 0 ? sign : -sign;
}

struct FactorPoint {
  std::vector<std::int64_t> lengths;  // grafting lengths, n - 1 of them (empty when n = 0)
  std::vector<std::int64_t> heights;  // Vert(k) heights then Vert(l) heights
};

int height_dim(const StratumType& d) { return vertex_count(d.k) + vertex_count(d.l); }

int coordinate_dim(const StratumType& d) {
  return d.n >= 1 ? d.n - 1 + height_dim(d) : height_dim(d) - 1;
}

// Reads a factor point from `coords` starting at `pos`.
FactorPoint read_factor(const StratumType& d, const std::vector<std::int64_t>& coords, std::size_t& pos) {
  FactorPoint f;
  const int h = height_dim(d);
  if (d.n >= 1) {
    for (int i = 0; i < d.n - 1; ++i) f.lengths.push_back(coords[pos++]);
    for (int i = 0; i < h; ++i) f.heights.push_back(coords[pos++]);
  } else {
    f.heights.push_back(0);
    for (int i = 1; i < h; ++i) f.heights.push_back(coords[pos++]);
  }
  return f;
}

std::vector<std::int64_t> glue_point(const StratumType& lower, const StratumType& upper,
                                     const std::vector<std::int64_t>& domain) {
  std::size_t pos = 0;
  const std::int64_t length = domain[pos++];
  FactorPoint p0 = read_factor(lower, domain, pos);
  FactorPoint p1 = read_factor(upper, domain, pos);

  std::vector<std::int64_t> lengths;
  if (lower.n >= 1 && upper.n >= 1) {
    std::int64_t lift = length;
    for (auto x : p0.lengths) lift += x;
    for (auto& y : p1.heights) y += lift;
    lengths = p0.lengths;
    lengths.push_back(length);
    lengths.insert(lengths.end(), p1.lengths.begin(), p1.lengths.end());
  } else if (lower.n == 0 && upper.n >= 1) {
    for (auto& y : p0.heights) y -= length;
    lengths = p1.lengths;
  } else {
    // upper.n == 0: translate the upper factor. When lower.n == 0 too, the result is a
    // quotient point and the translation of the lower factor is immaterial.
    for (auto& y : p1.heights) y += length;
    lengths = p0.lengths;
  }

  const StratumType glued = glue(upper, lower);
  const int x0 = vertex_count(lower.k), x1 = vertex_count(upper.k);
  std::vector<std::int64_t> heights;
  for (const VertexOrigin& o : glued_vertex_origins(upper.k, lower.k))
    heights.push_back(o.from_upper ? p1.heights[static_cast<std::size_t>(o.index)]
                                   : p0.heights[static_cast<std::size_t>(o.index)]);
  // l = glue(l0, l1): the lower factor owns the upper descending layer.
  for (const VertexOrigin& o : glued_vertex_origins(lower.l, upper.l))
    heights.push_back(o.from_upper ? p0.heights[static_cast<std::size_t>(x0 + o.index)]
                                   : p1.heights[static_cast<std::size_t>(x1 + o.index)]);

  std::vector<std::int64_t> out = lengths;
  if (glued.n >= 1) {
    out.insert(out.end(), heights.begin(), heights.end());
  } else {
    for (std::size_t j = 1; j < heights.size(); ++j) out.push_back(heights[j] - heights[0]);
  }
  return out;
}

}  // namespace

int gluing_orientation_by_determinant(const StratumType& lower, const StratumType& upper) {
  if (!is_nonempty(lower) || !is_nonempty(upper))
    throw std::invalid_argument("gluing orientation of an empty factor");
  if (leaves(lower.k) != trees(upper.k) || leaves(upper.l) != trees(lower.l))
    throw std::invalid_argument("gluing orientation: incompatible factors " + to_string(lower) + ", " +
                                to_string(upper));
  const StratumType glued = glue(upper, lower);
  const int dim = 1 + coordinate_dim(lower) + coordinate_dim(upper);
  if (!is_nonempty(glued) || coordinate_dim(glued) != dim)
    throw std::logic_error("gluing orientation: dimension mismatch for " + to_string(glued));

  Matrix jacobian(static_cast<std::size_t>(dim), std::vector<std::int64_t>(static_cast<std::size_t>(dim)));
  for (int c = 0; c < dim; ++c) {
    std::vector<std::int64_t> unit(static_cast<std::size_t>(dim), 0);
    unit[static_cast<std::size_t>(c)] = 1;
    auto image = glue_point(lower, upper, unit);
    for (int r = 0; r < dim; ++r) jacobian[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = image[static_cast<std::size_t>(r)];
  }
  const int s = determinant_sign(std::move(jacobian));
  if (s == 0) throw std::logic_error("gluing map is degenerate for " + to_string(glued));
  return s < 0 ? 1 : 0;
}

}  // namespace graftlab
