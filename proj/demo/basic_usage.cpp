// Builds the orthogonal symmetric Jordan basis of the subspace lattice of
// F_3^3, checks it, and reads off the Grassmann-scheme eigenvalues on lines.
#include "qlattice/qlattice.hpp"

#include <iostream>

int main() {
  using namespace qlattice;

  const SymmetricJordanBasis basis = construct_sjb(3, 3);
  std::cout << basis.vector_count() << " vectors in " << basis.chains.size() << " chains\n";

  const Report report = verify_sjb(basis);
  for (const auto& check : report.checks()) {
    std::cout << (check.passed ? "  ok   " : "  FAIL ") << check.name;
    if (!check.detail.empty()) std::cout << "  [" << check.detail << "]";
    std::cout << "\n";
  }

  for (const auto& chain : basis.chains) {
    if (chain.start_rank == 1) {
      std::cout << "first chain from rank 1 starts with " << chain.vectors.front().str() << "\n";
      break;
    }
  }

  const EigenTable table = eigentable(3, 1, basis);
  for (const auto& row : table.rows) {
    std::cout << "start rank " << row.start_rank << ":";
    for (const auto& value : row.eigenvalues) std::cout << " " << value;
    std::cout << "\n";
  }
  std::cout << "rooted spanning trees of C_3(3,1): " << rooted_tree_count(3, 1, 3) << "\n";
  return report.passed() ? 0 : 1;
}
