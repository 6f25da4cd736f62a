#pragma once

#include <stdexcept>
#include <vector>

namespace rsl {

// Permutation of {0, ..., size-1} in one-line form: image()[i] is where i
// goes. Composition is function composition, compose(f, g)(x) = f(g(x)).
class Permutation {
 public:
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
      if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v])
        throw std::invalid_argument("Permutation: not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(int size) {
    std::vector<int> img(size);
    for (int i = 0; i < size; ++i) img[i] = i;
    return Permutation(std::move(img));
  }

  // i -> i+1 mod size
  static Permutation full_cycle(int size) {
    std::vector<int> img(size);
    for (int i = 0; i < size; ++i) img[i] = (i + 1) % size;
    return Permutation(std::move(img));
  }

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
  }

  int cycle_count() const {
    std::vector<bool> seen(image_.size(), false);
    int cycles = 0;
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = image_[j]) seen[j] = true;
    }
    return cycles;
  }

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<int> image_;
};

inline Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("compose: size mismatch");
  std::vector<int> img(g.size());
  for (int i = 0; i < g.size(); ++i) img[i] = f(g(i));
  return Permutation(std::move(img));
}

}  // namespace rsl
