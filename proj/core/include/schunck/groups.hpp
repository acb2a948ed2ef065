#pragma once

#include <string>
#include <vector>

#include "schunck/finfield.hpp"
#include "schunck/finite_group.hpp"

namespace schunck {

FiniteGroup cyclic_group(int n);
/// Dihedral group of order 2n.
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup alternating_group_4();
FiniteGroup quaternion_group();
/// C3 semidirect C4 with the generator of C4 inverting C3.
FiniteGroup dicyclic_12();
FiniteGroup sl2_3();
/// Group generated by invertible matrices, realised by its faithful action
/// on the nonzero vectors.
FiniteGroup matrix_group(Field f, const std::vector<Matrix>& gens);

/// Curated solvable groups by name, in catalog order.
const std::vector<std::string>& builtin_group_names();
FiniteGroup builtin_group(const std::string& name);

}  // namespace schunck
