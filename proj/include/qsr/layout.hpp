#ifndef QSR_LAYOUT_HPP
#define QSR_LAYOUT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsr {

/// Ordered list of labeled subsystems. The first-listed label is the most
/// significant tensor factor (row-major Kronecker convention); label order is
/// fixed and significant.
class SystemLayout {
public:
  struct Subsystem {
    std::string label;
    long dim;
  };

  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  static SystemLayout single(const std::string& label, long dim) {
    return SystemLayout({{label, dim}});
  }

  const std::vector<Subsystem>& subsystems() const { return subs_; }
  std::size_t size() const { return subs_.size(); }
  long total_dim() const { return total_; }

  bool has_label(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;
  long dim_of(const std::string& label) const;

  /// Product of the dims of the given labels.
  long dim_of(const std::vector<std::string>& labels) const;

  /// All labels in layout order.
  std::vector<std::string> labels() const;

  /// Labels not in `drop`, in layout order.
  std::vector<std::string> complement(const std::vector<std::string>& drop) const;

  /// Concatenation; throws on duplicate labels.
  SystemLayout concat(const SystemLayout& other) const;

  /// Sub-layout of the given labels, kept in the original relative order.
  SystemLayout restricted(const std::vector<std::string>& keep) const;

  /// Decompose a flat row-major index into per-subsystem indices.
  std::vector<long> unravel(long flat) const;
  /// Inverse of unravel.
  long ravel(const std::vector<long>& multi) const;

  bool operator==(const SystemLayout& other) const;
  bool operator!=(const SystemLayout& other) const { return !(*this == other); }

  std::string to_string() const;

private:
  std::vector<Subsystem> subs_;
  std::vector<long> strides_;
  long total_ = 1;
};

}  // namespace qsr

#endif
