#include "qsr/layout.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qsr {

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems)
    : subs_(std::move(subsystems)) {
  std::set<std::string> seen;
  for (const auto& s : subs_) {
    if (s.dim < 1) throw std::invalid_argument("SystemLayout: dim < 1 for label " + s.label);
    if (!seen.insert(s.label).second)
      throw std::invalid_argument("SystemLayout: duplicate label " + s.label);
  }
  strides_.assign(subs_.size(), 1);
  total_ = 1;
  for (std::size_t i = subs_.size(); i-- > 0;) {
    strides_[i] = total_;
    total_ *= subs_[i].dim;
  }
}

bool SystemLayout::has_label(const std::string& label) const {
  return std::any_of(subs_.begin(), subs_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < subs_.size(); ++i)
    if (subs_[i].label == label) return i;
  throw std::invalid_argument("SystemLayout: unknown label " + label);
}

long SystemLayout::dim_of(const std::string& label) const {
  return subs_[index_of(label)].dim;
}

long SystemLayout::dim_of(const std::vector<std::string>& labels) const {
  long d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(subs_.size());
  for (const auto& s : subs_) out.push_back(s.label);
  return out;
}

std::vector<std::string> SystemLayout::complement(
    const std::vector<std::string>& drop) const {
  for (const auto& l : drop) index_of(l);  // validate
  std::vector<std::string> out;
  for (const auto& s : subs_)
    if (std::find(drop.begin(), drop.end(), s.label) == drop.end())
      out.push_back(s.label);
  return out;
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<Subsystem> subs = subs_;
  subs.insert(subs.end(), other.subs_.begin(), other.subs_.end());
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::restricted(const std::vector<std::string>& keep) const {
  for (const auto& l : keep) index_of(l);  // validate
  std::vector<Subsystem> subs;
  for (const auto& s : subs_)
    if (std::find(keep.begin(), keep.end(), s.label) != keep.end())
      subs.push_back(s);
  return SystemLayout(std::move(subs));
}

std::vector<long> SystemLayout::unravel(long flat) const {
  std::vector<long> multi(subs_.size());
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    multi[i] = flat / strides_[i];
    flat %= strides_[i];
  }
  return multi;
}

long SystemLayout::ravel(const std::vector<long>& multi) const {
  long flat = 0;
  for (std::size_t i = 0; i < subs_.size(); ++i) flat += multi[i] * strides_[i];
  return flat;
}

bool SystemLayout::operator==(const SystemLayout& other) const {
  if (subs_.size() != other.subs_.size()) return false;
  for (std::size_t i = 0; i < subs_.size(); ++i)
    if (subs_[i].label != other.subs_[i].label || subs_[i].dim != other.subs_[i].dim)
      return false;
  return true;
}

std::string SystemLayout::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (i) os << ",";
    os << subs_[i].label << ":" << subs_[i].dim;
  }
  return os.str();
}

}  // namespace qsr
