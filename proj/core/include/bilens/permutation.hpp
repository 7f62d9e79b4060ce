#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bilens {

// A bijection on {0, ..., n-1} stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {}
  static Permutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }

  bool valid() const;
  bool is_identity() const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

// (a * b)(i) = a(b(i))
Permutation compose(const Permutation& a, const Permutation& b);
std::string to_string(const Permutation& p);

}  // namespace bilens
