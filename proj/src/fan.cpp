#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "toric/lp.hpp"

namespace toric {

struct Fan::Cache {
  std::mutex mu;
  std::optional<std::vector<Wall>> walls;
  std::optional<std::vector<Vec>> wall_covectors;
  std::optional<bool> complete;
  std::optional<bool> simplicial;
  std::optional<bool> smooth;
};

namespace {

std::string cone_to_string(const Cone& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < c.rays.size(); ++i)
    os << (i ? "," : "") << c.rays[i];
  os << "}";
  return os.str();
}

// All (size)-subsets of {0,...,n-1}, lexicographic.
void for_each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(size);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == size) {
      fn(idx);
      return;
    }
    for (int i = start; i <= n - (size - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (size == 0) {
    std::vector<int> empty;
    fn(empty);
    return;
  }
  if (size <= n) rec(0, 0);
}

}  // namespace

Fan::Fan(int dim, std::vector<Vec> rays, std::vector<std::vector<int>> max_cones,
         std::optional<std::string> name)
    : dim_(dim), rays_(std::move(rays)), name_(std::move(name)),
      cache_(std::make_shared<Cache>()) {
  cones_.reserve(max_cones.size());
  for (auto& c : max_cones) {
    std::sort(c.begin(), c.end());
    cones_.push_back(Cone{std::move(c)});
  }
  validate();
}

bool Fan::operator==(const Fan& other) const {
  if (dim_ != other.dim_ || rays_ != other.rays_) return false;
  auto sorted = [](const std::vector<Cone>& cones) {
    std::vector<std::vector<int>> s;
    for (const Cone& c : cones) s.push_back(c.rays);
    std::sort(s.begin(), s.end());
    return s;
  };
  return sorted(cones_) == sorted(other.cones_);
}

const Vec& Fan::ray(int i) const {
  if (i < 0 || i >= ray_count())
    throw Error("ray_index_out_of_range", "ray index out of range");
  return rays_[i];
}

Fan::Cache& Fan::cache() const { return *cache_; }

void Fan::validate() const {
  if (dim_ < 1) throw Error("bad_dimension", "fan dimension must be at least 1");
  if (rays_.empty()) throw Error("no_rays", "fan has no rays");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (static_cast<int>(rays_[i].size()) != dim_)
      throw Error("dimension_mismatch",
                  "ray " + std::to_string(i) + " has wrong dimension");
    if (is_zero(rays_[i]))
      throw Error("zero_ray", "ray " + std::to_string(i) + " is zero");
    if (primitive(rays_[i]) != rays_[i])
      throw Error("ray_not_primitive", "ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (rays_[i] == rays_[j])
        throw Error("duplicate_ray",
                    "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (cones_.empty()) throw Error("no_cones", "fan has no maximal cones");

  std::set<std::vector<int>> seen;
  std::vector<bool> used(rays_.size(), false);
  for (std::size_t ci = 0; ci < cones_.size(); ++ci) {
    const Cone& c = cones_[ci];
    if (c.rays.empty())
      throw Error("empty_cone", "maximal cone " + std::to_string(ci) + " is empty");
    for (std::size_t k = 0; k < c.rays.size(); ++k) {
      int r = c.rays[k];
      if (r < 0 || r >= ray_count())
        throw Error("ray_index_out_of_range",
                    "cone " + std::to_string(ci) + " references missing ray");
      if (k > 0 && c.rays[k] == c.rays[k - 1])
        throw Error("duplicate_ray_in_cone",
                    "cone " + std::to_string(ci) + " repeats a ray");
      used[r] = true;
    }
    if (!seen.insert(c.rays).second)
      throw Error("duplicate_cone", "maximal cone " + cone_to_string(c) + " listed twice");

    std::vector<Vec> gens;
    for (int r : c.rays) gens.push_back(rays_[r]);
    if (rank(IntMatrix::from_rows(gens, dim_)) != dim_)
      throw Error("cone_not_full_dimensional",
                  "maximal cone " + cone_to_string(c) + " does not span R^n");
    if (static_cast<int>(c.rays.size()) > dim_) {
      // Non-simplicial cones additionally need pointedness and every listed
      // ray extreme; for simplicial cones both come free with independence.
      if (!strongly_convex(gens, dim_))
        throw Error("cone_not_strongly_convex",
                    "maximal cone " + cone_to_string(c) + " contains a line");
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::vector<Vec> others;
        for (std::size_t l = 0; l < gens.size(); ++l)
          if (l != k) others.push_back(gens[l]);
        if (in_cone(others, gens[k]))
          throw Error("ray_not_extreme_in_cone",
                      "ray " + std::to_string(c.rays[k]) + " is not extreme in cone " +
                          cone_to_string(c));
      }
    }
  }
  for (std::size_t r = 0; r < used.size(); ++r)
    if (!used[r])
      throw Error("unused_ray", "ray " + std::to_string(r) + " lies in no maximal cone");

  // Pairwise check that cones meet in a common face. A functional vanishing
  // on the shared rays and strictly signed on the remaining rays of either
  // cone pins the intersection to the cone over the shared rays; such a
  // functional exists exactly when the pair is glued correctly.
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = i + 1; j < cones_.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(cones_[i].rays.begin(), cones_[i].rays.end(),
                            cones_[j].rays.begin(), cones_[j].rays.end(),
                            std::back_inserter(common));
      std::vector<Vec> zeros, pos, neg;
      for (int r : common) zeros.push_back(rays_[r]);
      for (int r : cones_[i].rays)
        if (!std::binary_search(common.begin(), common.end(), r)) pos.push_back(rays_[r]);
      for (int r : cones_[j].rays)
        if (!std::binary_search(common.begin(), common.end(), r)) neg.push_back(rays_[r]);
      if (!separating_functional(zeros, pos, neg, dim_))
        throw Error("cones_intersect_badly",
                    "maximal cones " + cone_to_string(cones_[i]) + " and " +
                        cone_to_string(cones_[j]) + " do not intersect in a common face");
    }
}

bool Fan::is_simplicial() const {
  auto& c = cache();
  std::lock_guard lk(c.mu);
  if (!c.simplicial) {
    bool s = true;
    for (const Cone& cone : cones_)
      if (static_cast<int>(cone.rays.size()) != dim_) {
        s = false;
        break;
      }
    c.simplicial = s;
  }
  return *c.simplicial;
}

bool Fan::is_smooth() const {
  auto& c = cache();
  {
    std::lock_guard lk(c.mu);
    if (c.smooth) return *c.smooth;
  }
  bool s = is_simplicial();
  if (s)
    for (const Cone& cone : cones_)
      if (multiplicity(cone) != 1) {
        s = false;
        break;
      }
  std::lock_guard lk(c.mu);
  c.smooth = s;
  return s;
}

Int Fan::multiplicity(const Cone& cone) const {
  std::vector<Vec> gens;
  for (int r : cone.rays) gens.push_back(ray(r));
  if (rank(IntMatrix::from_rows(gens, dim_)) != static_cast<int>(gens.size()))
    throw Error("multiplicity_non_simplicial",
                "multiplicity undefined for non-simplicial cone");
  return lattice_index(gens);
}

Int Fan::multiplicity(int cone_index) const {
  if (cone_index < 0 || cone_index >= static_cast<int>(cones_.size()))
    throw Error("cone_index_out_of_range", "maximal cone index out of range");
  return multiplicity(cones_[cone_index]);
}

std::vector<Facet> cone_facets(const Fan& fan, const Cone& cone) {
  const int n = fan.dim();
  std::vector<Vec> gens;
  for (int r : cone.rays) gens.push_back(fan.ray(r));

  std::vector<Facet> facets;
  std::set<std::vector<int>> seen;
  // Every facet contains n-1 independent rays, so scanning (n-1)-subsets of
  // the generators and testing the resulting hyperplane finds them all.
  for_each_subset(static_cast<int>(gens.size()), n - 1, [&](const std::vector<int>& subset) {
    std::vector<Vec> span_rows;
    for (int s : subset) span_rows.push_back(gens[s]);
    IntMatrix m = IntMatrix::from_rows(span_rows, n);
    if (rank(m) != n - 1) return;
    std::vector<Vec> kernel = integer_kernel_basis(m);
    if (kernel.size() != 1) return;
    Vec normal = kernel.front();
    int sign = 0;
    bool supporting = true;
    std::vector<int> contact;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Int val = dot(normal, gens[g]);
      if (val == 0) {
        contact.push_back(cone.rays[g]);
      } else if (sign == 0) {
        sign = val > 0 ? 1 : -1;
      } else if ((val > 0 ? 1 : -1) != sign) {
        supporting = false;
        break;
      }
    }
    if (!supporting || sign == 0) return;
    if (sign < 0) normal = negate(normal);
    std::vector<Vec> contact_rays;
    for (int r : contact) contact_rays.push_back(fan.ray(r));
    if (rank(IntMatrix::from_rows(contact_rays, n)) != n - 1) return;
    if (seen.insert(contact).second) facets.push_back(Facet{contact, normal});
  });
  std::sort(facets.begin(), facets.end(),
            [](const Facet& a, const Facet& b) { return a.rays < b.rays; });
  return facets;
}

const std::vector<Wall>& Fan::walls() const {
  auto& c = cache();
  std::lock_guard lk(c.mu);
  if (!c.walls) {
    // facet ray set -> incidences (cone index, inward normal)
    std::map<std::vector<int>, std::vector<std::pair<int, Vec>>> groups;
    for (std::size_t ci = 0; ci < cones_.size(); ++ci)
      for (Facet& f : cone_facets(*this, cones_[ci]))
        groups[f.rays].push_back({static_cast<int>(ci), std::move(f.normal)});

    std::vector<Wall> walls;
    std::vector<Vec> covectors;
    for (auto& [rays, inc] : groups) {
      if (inc.size() != 2)
        throw Error("fan_not_complete",
                    "facet shared by " + std::to_string(inc.size()) +
                        " maximal cones; fan is not complete/valid");
      walls.push_back(Wall{rays, inc[0].first, inc[1].first});
      // Covector vanishing on the wall, positive toward the right cone: the
      // right cone lies on the non-positive side of the left cone's normal.
      covectors.push_back(primitive(negate(inc[0].second)));
    }
    // Wall-adjacency connectivity; together with matched facets this makes
    // the support all of R^n.
    std::vector<int> comp(cones_.size(), -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (const Wall& w : walls) {
        int other = w.left == cur ? w.right : (w.right == cur ? w.left : -1);
        if (other >= 0 && comp[other] < 0) {
          comp[other] = 0;
          stack.push_back(other);
        }
      }
    }
    for (int x : comp)
      if (x < 0)
        throw Error("fan_not_complete", "maximal cones are not connected through walls");
    c.walls = std::move(walls);
    c.wall_covectors = std::move(covectors);
  }
  return *c.walls;
}

const Vec& Fan::wall_covector(int wall_index) const {
  walls();
  auto& c = cache();
  std::lock_guard lk(c.mu);
  if (wall_index < 0 || wall_index >= static_cast<int>(c.wall_covectors->size()))
    throw Error("wall_index_out_of_range", "wall index out of range");
  return (*c.wall_covectors)[wall_index];
}

bool Fan::is_complete() const {
  {
    auto& c = cache();
    std::lock_guard lk(c.mu);
    if (c.complete) return *c.complete;
  }
  bool ok = true;
  try {
    walls();
  } catch (const Error& e) {
    if (e.code() != "fan_not_complete") throw;
    ok = false;
  }
  auto& c = cache();
  std::lock_guard lk(c.mu);
  c.complete = ok;
  return ok;
}

StarFan Fan::star_fan(int ray_index) const {
  const Vec& v = ray(ray_index);
  if (dim_ < 2)
    throw Error("bad_dimension", "star fan needs ambient dimension at least 2");
  if (!is_complete()) throw Error("fan_not_complete", "star fan needs a complete fan");

  // Unimodular U with U v = e_1; the quotient map N -> N/Zv is the last
  // n-1 rows of U.
  IntMatrix vm(dim_, 1);
  for (int i = 0; i < dim_; ++i) vm.at(i, 0) = v[i];
  SmithResult snf = smith_normal_form(vm);
  if (snf.s.at(0, 0) != 1) throw Error("internal_error", "primitive ray with gcd != 1");
  IntMatrix proj(dim_ - 1, dim_);
  for (int i = 1; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) proj.at(i - 1, j) = snf.u.at(i, j);

  std::vector<int> ray_image(ray_count(), -1);
  std::vector<Int> ray_scale(ray_count(), Int(0));
  std::vector<Vec> star_rays;
  std::vector<std::vector<int>> star_cones;
  std::vector<int> cone_source;
  for (std::size_t ci = 0; ci < cones_.size(); ++ci) {
    const Cone& cone = cones_[ci];
    if (!std::binary_search(cone.rays.begin(), cone.rays.end(), ray_index)) continue;
    cone_source.push_back(static_cast<int>(ci));
    std::vector<int> image_cone;
    for (int r : cone.rays) {
      if (r == ray_index) continue;
      if (ray_image[r] < 0) {
        Vec img = proj.apply(rays_[r]);
        if (is_zero(img))
          throw Error("internal_error", "adjacent ray collapses in the star quotient");
        Vec prim = primitive(img);
        Int scale = 0;
        for (int j = 0; j < dim_ - 1; ++j)
          if (prim[j] != 0) {
            scale = img[j] / prim[j];
            break;
          }
        int idx = -1;
        for (std::size_t s = 0; s < star_rays.size(); ++s)
          if (star_rays[s] == prim) idx = static_cast<int>(s);
        if (idx < 0) {
          idx = static_cast<int>(star_rays.size());
          star_rays.push_back(prim);
        }
        ray_image[r] = idx;
        ray_scale[r] = scale;
      }
      image_cone.push_back(ray_image[r]);
    }
    star_cones.push_back(std::move(image_cone));
  }
  auto fan = std::make_shared<const Fan>(dim_ - 1, std::move(star_rays),
                                         std::move(star_cones));
  return StarFan{std::move(fan), std::move(proj), std::move(ray_image),
                 std::move(ray_scale), std::move(cone_source)};
}

}  // namespace toric
