#include "bilens/permutation.hpp"

#include <numeric>

#include "bilens/errors.hpp"

namespace bilens {

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  return Permutation(std::move(image));
}

bool Permutation::valid() const {
  std::vector<char> seen(image_.size(), 0);
  for (std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error("composing permutations of different sizes");
  std::vector<std::size_t> image(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) image[i] = a(b(i));
  return Permutation(std::move(image));
}

std::string to_string(const Permutation& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(p(i));
  }
  return out + ")";
}

}  // namespace bilens
