#include "isokit/geom.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <unordered_map>

#include <Eigen/LU>

#include "isokit/error.hpp"
#include "isokit/kernels.hpp"

namespace isokit {
namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }
int sign_of(const Rational& v) { return sgn(v); }

double norm(const Point3d& p) { return std::sqrt(dot(p, p)); }

// Incremental hull with conflict lists. Every outside point is parked on one
// face it can see; when that face dies its points are offered only to the
// newly created faces, which is sufficient because any point beyond a deleted
// face and outside the new hull is beyond one of the new faces.
template <class T>
class IncrementalHull {
 public:
  struct Face {
    std::array<int, 3> v{};
    std::array<int, 3> nbr{-1, -1, -1};  // neighbour across edge (v[i], v[i+1])
    Point3<T> normal{};
    T offset{};
    double threshold = 0.0;
    bool alive = true;
    std::vector<int> outside;
  };

  explicit IncrementalHull(std::vector<Point3<T>> points) : pts_(std::move(points)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
    if (pts_.size() < 4) {
      throw DegenerateInput("convex hull needs at least 4 distinct points");
    }
    if constexpr (std::is_same_v<T, double>) {
      Point3d lo = pts_.front(), hi = pts_.front();
      for (const auto& p : pts_) {
        for (int k = 0; k < 3; ++k) {
          lo[k] = std::min(lo[k], p[k]);
          hi[k] = std::max(hi[k], p[k]);
        }
      }
      eps_ = 1e-10 * norm(hi - lo);
    }
    build();
  }

  /// Indices (into the deduplicated point list) of hull vertices and the
  /// facets re-indexed into that vertex list.
  void extract(std::vector<Point3<T>>& vertices, std::vector<std::array<int, 3>>& facets) const {
    std::vector<int> remap(pts_.size(), -1);
    vertices.clear();
    facets.clear();
    for (const auto& f : faces_) {
      if (!f.alive) continue;
      std::array<int, 3> tri{};
      for (int k = 0; k < 3; ++k) {
        int& slot = remap[f.v[k]];
        if (slot < 0) {
          slot = static_cast<int>(vertices.size());
          vertices.push_back(pts_[f.v[k]]);
        }
        tri[k] = slot;
      }
      facets.push_back(tri);
    }
  }

 private:
  bool above(const Face& f, const Point3<T>& p) const {
    if constexpr (std::is_same_v<T, double>) {
      return dot(f.normal, p) - f.offset > f.threshold;
    } else {
      return sgn(dot(f.normal, p) - f.offset) > 0;
    }
  }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.normal = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
    f.offset = dot(f.normal, pts_[a]);
    if constexpr (std::is_same_v<T, double>) f.threshold = eps_ * norm(f.normal);
    faces_.push_back(std::move(f));
    return static_cast<int>(faces_.size()) - 1;
  }

  // Distance-like measures used only to pick a well-spread initial simplex.
  static double approx(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
      return v;
    } else {
      return v.get_d();
    }
  }

  void initial_simplex(std::array<int, 4>& s) {
    const int n = static_cast<int>(pts_.size());
    s[0] = 0;  // lexicographically smallest after sort
    double best = -1;
    for (int i = 0; i < n; ++i) {
      const auto d = pts_[i] - pts_[s[0]];
      const double v = approx(dot(d, d));
      if (v > best) best = v, s[1] = i;
    }
    const auto e1 = pts_[s[1]] - pts_[s[0]];
    best = -1;
    for (int i = 0; i < n; ++i) {
      const auto c = cross(e1, pts_[i] - pts_[s[0]]);
      const double v = approx(dot(c, c));
      if (v > best) best = v, s[2] = i;
    }
    const auto c = cross(e1, pts_[s[2]] - pts_[s[0]]);
    if constexpr (std::is_same_v<T, double>) {
      if (norm(c) <= eps_ * norm(e1)) throw DegenerateInput("points are collinear");
    } else {
      if (dot(c, c) == 0) throw DegenerateInput("points are collinear");
    }
    best = -1;
    for (int i = 0; i < n; ++i) {
      const double v = std::abs(approx(dot(c, pts_[i] - pts_[s[0]])));
      if (v > best) best = v, s[3] = i;
    }
    const T h = dot(c, pts_[s[3]] - pts_[s[0]]);
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(h) <= eps_ * norm(c)) throw DegenerateInput("points are coplanar");
    } else {
      if (sgn(h) == 0) throw DegenerateInput("points are coplanar");
    }
  }

  void link(int f, int g) {
    for (int i = 0; i < 3; ++i) {
      const int a = faces_[f].v[i], b = faces_[f].v[(i + 1) % 3];
      for (int j = 0; j < 3; ++j) {
        if (faces_[g].v[j] == b && faces_[g].v[(j + 1) % 3] == a) {
          faces_[f].nbr[i] = g;
          faces_[g].nbr[j] = f;
        }
      }
    }
  }

  void build() {
    std::array<int, 4> s{};
    initial_simplex(s);
    const std::array<std::array<int, 4>, 4> combos{{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}}};
    for (const auto& cmb : combos) {
      int a = s[cmb[0]], b = s[cmb[1]], c = s[cmb[2]];
      const int d = s[cmb[3]];
      const T side = dot(cross(pts_[b] - pts_[a], pts_[c] - pts_[a]), pts_[d] - pts_[a]);
      if (sign_of(side) > 0) std::swap(b, c);
      make_face(a, b, c);
    }
    for (int f = 0; f < 4; ++f) {
      for (int g = f + 1; g < 4; ++g) link(f, g);
    }
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
      if (i == s[0] || i == s[1] || i == s[2] || i == s[3]) continue;
      for (int f = 0; f < 4; ++f) {
        if (above(faces_[f], pts_[i])) {
          faces_[f].outside.push_back(i);
          break;
        }
      }
    }

    std::vector<int> mark;
    int stamp = 0;
    for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
      if (!faces_[fi].alive || faces_[fi].outside.empty()) continue;
      const Face& f = faces_[fi];
      int eye = f.outside.front();
      T far = dot(f.normal, pts_[eye]);
      for (int q : f.outside) {
        T d = dot(f.normal, pts_[q]);
        if (d > far) far = d, eye = q;
      }
      const Point3<T>& p = pts_[eye];

      mark.resize(faces_.size(), 0);
      ++stamp;
      std::vector<int> visible{static_cast<int>(fi)};
      mark[fi] = stamp;
      struct HorizonEdge {
        int a, b, outer;
      };
      std::vector<HorizonEdge> horizon;
      for (std::size_t k = 0; k < visible.size(); ++k) {
        const int vf = visible[k];
        for (int e = 0; e < 3; ++e) {
          const int g = faces_[vf].nbr[e];
          if (mark[g] == stamp) continue;
          if (above(faces_[g], p)) {
            mark[g] = stamp;
            visible.push_back(g);
          }
        }
      }
      for (int vf : visible) {
        for (int e = 0; e < 3; ++e) {
          const int g = faces_[vf].nbr[e];
          if (mark[g] != stamp) horizon.push_back({faces_[vf].v[e], faces_[vf].v[(e + 1) % 3], g});
        }
      }

      std::unordered_map<int, int> starts, ends;
      std::vector<int> created;
      for (const auto& h : horizon) {
        const int nf = make_face(h.a, h.b, eye);
        created.push_back(nf);
        if (!starts.emplace(h.a, nf).second || !ends.emplace(h.b, nf).second) {
          throw DegenerateInput("numerically inconsistent hull horizon");
        }
        Face& outer = faces_[h.outer];
        for (int j = 0; j < 3; ++j) {
          if (outer.v[j] == h.b && outer.v[(j + 1) % 3] == h.a) outer.nbr[j] = nf;
        }
        faces_[nf].nbr[0] = h.outer;
      }
      for (int nf : created) {
        Face& F = faces_[nf];
        const auto s_it = starts.find(F.v[1]);
        const auto e_it = ends.find(F.v[0]);
        if (s_it == starts.end() || e_it == ends.end()) {
          throw DegenerateInput("numerically inconsistent hull horizon");
        }
        F.nbr[1] = s_it->second;
        F.nbr[2] = e_it->second;
      }

      std::vector<int> orphans;
      for (int vf : visible) {
        Face& dead = faces_[vf];
        dead.alive = false;
        for (int q : dead.outside) {
          if (q != eye) orphans.push_back(q);
        }
        dead.outside.clear();
        dead.outside.shrink_to_fit();
      }
      for (int q : orphans) {
        for (int nf : created) {
          if (above(faces_[nf], pts_[q])) {
            faces_[nf].outside.push_back(q);
            break;
          }
        }
      }
    }
  }

  std::vector<Point3<T>> pts_;
  std::vector<Face> faces_;
  double eps_ = 0.0;
};

// A hull vertex is extreme iff the normals of its incident facets span R^3;
// otherwise it sits inside an edge or a flat face of the triangulation.
template <class T>
std::vector<bool> extreme_mask(const std::vector<Point3<T>>& verts,
                               const std::vector<std::array<int, 3>>& facets) {
  std::vector<std::vector<Point3<T>>> normals(verts.size());
  for (const auto& f : facets) {
    auto n = cross(verts[f[1]] - verts[f[0]], verts[f[2]] - verts[f[0]]);
    if constexpr (std::is_same_v<T, double>) {
      const double len = norm(n);
      if (len == 0) continue;
      for (auto& c : n) c /= len;
    }
    for (int v : f) normals[v].push_back(n);
  }
  std::vector<bool> keep(verts.size(), false);
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const auto& ns = normals[v];
    bool spans = false;
    for (std::size_t i = 0; i < ns.size() && !spans; ++i) {
      for (std::size_t j = i + 1; j < ns.size() && !spans; ++j) {
        const auto c = cross(ns[i], ns[j]);
        for (std::size_t k = j + 1; k < ns.size() && !spans; ++k) {
          if constexpr (std::is_same_v<T, double>) {
            spans = std::abs(dot(c, ns[k])) > 1e-9;
          } else {
            spans = sgn(dot(c, ns[k])) != 0;
          }
        }
      }
    }
    keep[v] = spans;
  }
  return keep;
}

template <class T>
void hull_vertices(std::vector<Point3<T>> pts, std::vector<Point3<T>>& verts,
                   std::vector<std::array<int, 3>>& facets) {
  for (;;) {
    IncrementalHull<T> hull(std::move(pts));
    hull.extract(verts, facets);
    const auto keep = extreme_mask(verts, facets);
    if (std::all_of(keep.begin(), keep.end(), [](bool b) { return b; })) return;
    pts.clear();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (keep[i]) pts.push_back(verts[i]);
    }
  }
}

}  // namespace

const std::vector<Point3q>& Polytope::exact_vertices() const {
  if (mode_ != NumberMode::rational) {
    throw ModeError("exact coordinates requested from a float-mode polytope");
  }
  return exact_;
}

Polytope convex_hull(std::span<const Point3d> points) {
  for (const auto& p : points) {
    for (double c : p) {
      if (!std::isfinite(c)) throw DegenerateInput("non-finite coordinate");
    }
  }
  Polytope P;
  P.mode_ = NumberMode::floating;
  hull_vertices(std::vector<Point3d>(points.begin(), points.end()), P.vertices_, P.facets_);
  return P;
}

Polytope convex_hull(std::span<const Point3q> points) {
  Polytope P;
  P.mode_ = NumberMode::rational;
  hull_vertices(std::vector<Point3q>(points.begin(), points.end()), P.exact_, P.facets_);
  P.vertices_.reserve(P.exact_.size());
  for (const auto& q : P.exact_) P.vertices_.push_back(to_double(q));
  return P;
}

Polytope Polytope::transformed(const Mat3& A) const {
  const double det = A.determinant();
  if (!(std::abs(det) > 0) || !std::isfinite(det)) {
    throw DegenerateInput("linear map is singular");
  }
  Polytope out;
  out.mode_ = NumberMode::floating;
  out.vertices_.reserve(vertices_.size());
  for (const auto& v : vertices_) out.vertices_.push_back(to_point(A * to_vec(v)));
  out.facets_ = facets_;
  if (det < 0) {
    for (auto& f : out.facets_) std::swap(f[1], f[2]);
  }
  return out;
}

Polytope Polytope::transformed(const Mat3q& A) const {
  const auto& ex = exact_vertices();
  const Rational det = det3<Rational>({A[0][0], A[1][0], A[2][0]}, {A[0][1], A[1][1], A[2][1]},
                                      {A[0][2], A[1][2], A[2][2]});
  if (det == 0) throw DegenerateInput("linear map is singular");
  Polytope out;
  out.mode_ = NumberMode::rational;
  out.exact_.reserve(ex.size());
  for (const auto& v : ex) {
    Point3q w;
    for (int r = 0; r < 3; ++r) w[r] = A[r][0] * v[0] + A[r][1] * v[1] + A[r][2] * v[2];
    out.exact_.push_back(std::move(w));
  }
  for (const auto& q : out.exact_) out.vertices_.push_back(to_double(q));
  out.facets_ = facets_;
  if (det < 0) {
    for (auto& f : out.facets_) std::swap(f[1], f[2]);
  }
  return out;
}

double volume(const Polytope& P) {
  const auto& v = P.vertices();
  Point3d c{0, 0, 0};
  for (const auto& p : v) {
    for (int k = 0; k < 3; ++k) c[k] += p[k];
  }
  for (auto& x : c) x /= static_cast<double>(v.size());
  double sum = 0;
  for (const auto& f : P.facets()) sum += std::abs(det3(v[f[0]] - c, v[f[1]] - c, v[f[2]] - c));
  return sum / 6.0;
}

Rational exact_volume(const Polytope& P) {
  const auto& v = P.exact_vertices();
  Point3q c{0, 0, 0};
  for (const auto& p : v) {
    for (int k = 0; k < 3; ++k) c[k] += p[k];
  }
  for (auto& x : c) x /= static_cast<long>(v.size());
  Rational sum = 0;
  for (const auto& f : P.facets()) sum += abs(det3(v[f[0]] - c, v[f[1]] - c, v[f[2]] - c));
  return sum / 6;
}

double diameter(const Polytope& P) {
  const auto& v = P.vertices();
  std::vector<double> x(v.size()), y(v.size()), z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = v[i][0], y[i] = v[i][1], z[i] = v[i][2];
  return std::sqrt(kernels::max_pair_distance_sq(x, y, z));
}

Rational exact_diameter_squared(const Polytope& P) {
  const auto& v = P.exact_vertices();
  Rational best = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const auto d = v[i] - v[j];
      Rational n = dot(d, d);
      if (n > best) best = n;
    }
  }
  return best;
}

Polytope difference_body(const Polytope& P) {
  if (P.is_exact()) {
    const auto& v = P.exact_vertices();
    std::vector<Point3q> diffs;
    diffs.reserve(v.size() * v.size());
    for (const auto& a : v) {
      for (const auto& b : v) {
        if (&a != &b) diffs.push_back(a - b);
      }
    }
    return convex_hull(diffs);
  }
  const auto& v = P.vertices();
  std::vector<Point3d> diffs;
  diffs.reserve(v.size() * v.size());
  for (const auto& a : v) {
    for (const auto& b : v) {
      if (&a != &b) diffs.push_back(a - b);
    }
  }
  return convex_hull(diffs);
}

double simplex_volume_lower_bound(const Vec3& y1, const Vec3& y2, const Vec3& y3) {
  Mat3 m;
  m << y1, y2, y3;
  return std::abs(m.determinant()) / 6.0;
}

}  // namespace isokit
