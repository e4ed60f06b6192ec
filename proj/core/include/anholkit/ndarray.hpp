#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "anholkit/error.hpp"

namespace anholkit {

// Dense row-major array with up to four indices.
template <class T>
class NdArray {
 public:
  NdArray() = default;
  explicit NdArray(std::vector<int> shape, const T& fill = T{}) : shape_(std::move(shape)) {
    if (shape_.size() > 4) fail(ErrorKind::unsupported_valence, "at most four indices");
    std::size_t n = 1;
    for (int s : shape_) n *= static_cast<std::size_t>(s);
    data_.assign(n, fill);
  }

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int extent(int axis) const { return shape_[static_cast<std::size_t>(axis)]; }
  std::size_t size() const { return data_.size(); }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  template <class... I>
  T& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }
  T& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  const T& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

  // Index tuple of a flat position.
  std::vector<int> unflatten(std::size_t flat) const {
    std::vector<int> idx(shape_.size());
    for (std::size_t a = shape_.size(); a-- > 0;) {
      idx[a] = static_cast<int>(flat % static_cast<std::size_t>(shape_[a]));
      flat /= static_cast<std::size_t>(shape_[a]);
    }
    return idx;
  }

 private:
  template <class Seq>
  std::size_t offset(const Seq& idx) const {
    std::size_t off = 0;
    std::size_t a = 0;
    for (int i : idx) {
      off = off * static_cast<std::size_t>(shape_[a]) + static_cast<std::size_t>(i);
      ++a;
    }
    return off;
  }
  std::size_t offset(std::initializer_list<int> idx) const {
    return offset<std::initializer_list<int>>(idx);
  }

  std::vector<int> shape_;
  std::vector<T> data_;
};

}  // namespace anholkit
