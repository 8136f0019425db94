#ifndef QSR_SDP_HPP
#define QSR_SDP_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsr/linalg.hpp"

namespace qsr::sdp {

enum class Sense { minimize, maximize };
enum class Relation { eq, le, ge };

/// Block-structured semidefinite program:
///   optimize   sum_j <C_j, X_j>
///   subject to sum_j <A_ij, X_j>  (=, <=, >=)  b_i   for each constraint i,
///              X_j >= 0.
/// Blocks may be complex Hermitian or real symmetric; all coefficient matrices
/// must be Hermitian. Inner products are Tr(A X), real by hermiticity.
class SdpProblem {
public:
  struct Block {
    std::string name;
    long size;
    bool is_complex;
  };
  struct Constraint {
    std::map<std::size_t, MatrixXcd> coeffs;  // block index -> Hermitian coefficient
    Relation rel = Relation::eq;
    double rhs = 0.0;
  };

  explicit SdpProblem(Sense sense, long size_cap = 128) : sense_(sense), cap_(size_cap) {}

  std::size_t add_block(const std::string& name, long size, bool is_complex = true);
  void add_objective(std::size_t block, const MatrixXcd& c);
  void add_constraint(Constraint c);
  /// Convenience for single-block constraints.
  void add_constraint(std::size_t block, const MatrixXcd& coeff, Relation rel, double rhs);

  Sense sense() const { return sense_; }
  long size_cap() const { return cap_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::map<std::size_t, MatrixXcd>& objective() const { return objective_; }

  /// Plain-text sparse triplet dump for external cross-checks (see README).
  std::string dump() const;

private:
  Sense sense_;
  long cap_;
  std::vector<Block> blocks_;
  std::map<std::size_t, MatrixXcd> objective_;
  std::vector<Constraint> constraints_;
};

/// Map every complex Hermitian block of dimension d to a real symmetric block
/// of dimension 2d via A -> [[Re A, -Im A], [Im A, Re A]] (coefficients scaled
/// by 1/2 so objective and constraint values are preserved).
SdpProblem embed_complex(const SdpProblem& p);

struct SdpSolution {
  enum class Status { optimal, infeasible, max_iter };
  Status status = Status::max_iter;
  double primal_value = 0.0;
  double dual_value = 0.0;
  std::vector<MatrixXcd> block_values;  // one per problem block, PSD at optimum
  int iterations = 0;
  std::string diagnostics;

  bool ok() const { return status == Status::optimal; }
};

/// Primal-dual path-following interior-point solve (Nesterov-Todd scaling,
/// dense Cholesky on the Schur complement). Deterministic and single-threaded.
SdpSolution solve(const SdpProblem& p, double tol = 1e-7, int max_iter = 200);

/// One term of a matrix-valued linear expression: the entry (r, c) of the term
/// equals Tr[k(r, c) X_block]. k need not be Hermitian; equality helpers
/// symmetrize into Hermitian real/imaginary-part constraints.
struct MatrixTerm {
  std::size_t block;
  std::function<MatrixXcd(long, long)> k;
};

/// Entrywise Hermitian equality  sum_t term_t(X) == target  (target dim x dim).
/// Emits one real constraint per diagonal entry and real/imaginary-part
/// constraints per off-diagonal pair.
void add_hermitian_equality(SdpProblem& p, const std::vector<MatrixTerm>& terms,
                            const MatrixXcd& target);

/// K-maps for common terms.
MatrixTerm term_identity(std::size_t block, long dim, double scale = 1.0);
/// Sub-block X[offset:offset+dim, offset:offset+dim] of a block of dimension
/// block_dim.
MatrixTerm term_subblock(std::size_t block, long block_dim, long offset, long dim,
                         double scale = 1.0);
/// (I_{dim_left} tensor Y) for a block Y of dimension dim_right.
MatrixTerm term_id_tensor(std::size_t block, long dim_left, long dim_right,
                          double scale = 1.0);
/// t * fixed for a 1x1 block holding the scalar t.
MatrixTerm term_scalar_times(std::size_t block, const MatrixXcd& fixed);

}  // namespace qsr::sdp

#endif
