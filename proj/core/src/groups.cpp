#include "schunck/groups.hpp"

#include <map>

#include "schunck/error.hpp"

namespace schunck {

namespace {

std::vector<int> cycle_perm(int n, const std::vector<int>& cycle) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = i;
  for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
  return p;
}

std::vector<int> range_cycle(int n) {
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[i] = i;
  return c;
}

}  // namespace

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  if (n == 1) return FiniteGroup({{0}}, 0);
  return group_from_permutations({cycle_perm(n, range_cycle(n))});
}

FiniteGroup dihedral_group(int n) {
  if (n < 2) throw InputError("dihedral group needs n >= 2");
  std::vector<int> reflection(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) reflection[i] = (n - i) % n;
  if (n == 2) return direct_product(cyclic_group(2), cyclic_group(2));
  return group_from_permutations({cycle_perm(n, range_cycle(n)), reflection});
}

FiniteGroup symmetric_group(int n) {
  if (n < 2) return FiniteGroup({{0}}, 0);
  return group_from_permutations({cycle_perm(n, range_cycle(n)), cycle_perm(n, {0, 1})});
}

FiniteGroup alternating_group_4() {
  return group_from_permutations({cycle_perm(4, {0, 1, 2}), {1, 0, 3, 2}});
}

FiniteGroup matrix_group(Field f, const std::vector<Matrix>& gens) {
  if (gens.empty()) return FiniteGroup({{0}}, 0);
  const std::size_t n = gens.front().rows();
  std::vector<Vector> points;
  for_each_vector(f, n, [&](const Vector& v) {
    for (int x : v)
      if (x != 0) {
        points.push_back(v);
        break;
      }
    return true;
  });
  std::map<Vector, int> index;
  for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> perms;
  for (const Matrix& g : gens) {
    if (!inverse(g)) throw InputError("matrix_group: generator is singular");
    std::vector<int> p;
    for (const Vector& v : points) p.push_back(index.at(g.apply(v)));
    perms.push_back(std::move(p));
  }
  return group_from_permutations(perms);
}

FiniteGroup quaternion_group() {
  const Field f(3);
  return matrix_group(f, {Matrix::from_rows(f, {{0, 1}, {2, 0}}, 2), Matrix::from_rows(f, {{1, 1}, {1, 2}}, 2)});
}

FiniteGroup sl2_3() {
  const Field f(3);
  return matrix_group(f, {Matrix::from_rows(f, {{1, 1}, {0, 1}}, 2), Matrix::from_rows(f, {{0, 1}, {2, 0}}, 2)});
}

FiniteGroup dicyclic_12() {
  // (a, b) with a mod 3, b mod 4: (a1,b1)(a2,b2) = (a1 + (-1)^b1 a2, b1 + b2).
  FiniteGroup::Table table(12, std::vector<int>(12));
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) {
      const int a1 = x / 4, b1 = x % 4, a2 = y / 4, b2 = y % 4;
      const int a = ((a1 + (b1 % 2 ? -a2 : a2)) % 3 + 3) % 3;
      table[x][y] = a * 4 + (b1 + b2) % 4;
    }
  return FiniteGroup(std::move(table), 0);
}

const std::vector<std::string>& builtin_group_names() {
  static const std::vector<std::string> names{"C2", "C3", "C4",  "C2^2", "C6",    "S3", "D4",     "Q8",
                                              "C8", "C3:C4", "D6", "A4",   "C3xS3", "S4", "SL(2,3)"};
  return names;
}

FiniteGroup builtin_group(const std::string& name) {
  if (name == "C2") return cyclic_group(2);
  if (name == "C3") return cyclic_group(3);
  if (name == "C4") return cyclic_group(4);
  if (name == "C2^2") return direct_product(cyclic_group(2), cyclic_group(2));
  if (name == "C6") return cyclic_group(6);
  if (name == "S3") return symmetric_group(3);
  if (name == "D4") return dihedral_group(4);
  if (name == "Q8") return quaternion_group();
  if (name == "C8") return cyclic_group(8);
  if (name == "C3:C4") return dicyclic_12();
  if (name == "D6") return dihedral_group(6);
  if (name == "A4") return alternating_group_4();
  if (name == "C3xS3") return direct_product(cyclic_group(3), symmetric_group(3));
  if (name == "S4") return symmetric_group(4);
  if (name == "SL(2,3)") return sl2_3();
  throw InputError("unknown builtin group '" + name + "'");
}

}  // namespace schunck
