#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace approxstable {

/// Fixed 128-bit set over doctor indices. Two words cover every instance
/// this library enumerates; index-dense markets are validated to n <= 128.
class DoctorSet {
 public:
  static constexpr int kCapacity = 128;

  constexpr DoctorSet() = default;

  DoctorSet(std::initializer_list<int> ids) {
    for (int d : ids) insert(d);
  }

  static DoctorSet full(int n) {
    check_index(n == 0 ? 0 : n - 1);
    DoctorSet s;
    if (n >= 64) {
      s.w_[0] = ~0ull;
      s.w_[1] = (n == 128) ? ~0ull : ((1ull << (n - 64)) - 1);
    } else if (n > 0) {
      s.w_[0] = (1ull << n) - 1;
    }
    return s;
  }

  static DoctorSet single(int d) {
    DoctorSet s;
    s.insert(d);
    return s;
  }

  void insert(int d) {
    check_index(d);
    w_[d >> 6] |= 1ull << (d & 63);
  }

  void erase(int d) {
    check_index(d);
    w_[d >> 6] &= ~(1ull << (d & 63));
  }

  bool contains(int d) const {
    check_index(d);
    return (w_[d >> 6] >> (d & 63)) & 1ull;
  }

  int count() const {
    return std::popcount(w_[0]) + std::popcount(w_[1]);
  }

  bool empty() const { return w_[0] == 0 && w_[1] == 0; }

  bool subset_of(const DoctorSet& o) const {
    return (w_[0] & ~o.w_[0]) == 0 && (w_[1] & ~o.w_[1]) == 0;
  }

  bool intersects(const DoctorSet& o) const {
    return (w_[0] & o.w_[0]) != 0 || (w_[1] & o.w_[1]) != 0;
  }

  friend DoctorSet operator|(DoctorSet a, const DoctorSet& b) {
    a.w_[0] |= b.w_[0];
    a.w_[1] |= b.w_[1];
    return a;
  }

  friend DoctorSet operator&(DoctorSet a, const DoctorSet& b) {
    a.w_[0] &= b.w_[0];
    a.w_[1] &= b.w_[1];
    return a;
  }

  /// Set difference.
  friend DoctorSet operator-(DoctorSet a, const DoctorSet& b) {
    a.w_[0] &= ~b.w_[0];
    a.w_[1] &= ~b.w_[1];
    return a;
  }

  DoctorSet& operator|=(const DoctorSet& b) { return *this = *this | b; }
  DoctorSet& operator&=(const DoctorSet& b) { return *this = *this & b; }
  DoctorSet& operator-=(const DoctorSet& b) { return *this = *this - b; }

  friend bool operator==(const DoctorSet& a, const DoctorSet& b) = default;

  /// Order by value of the 128-bit word (doctor i is bit i). Used as the
  /// deterministic tie-break among equal-utility packings.
  bool bits_less(const DoctorSet& o) const {
    if (w_[1] != o.w_[1]) return w_[1] < o.w_[1];
    return w_[0] < o.w_[0];
  }

  template <typename F>
  void for_each(F&& f) const {
    for (int word = 0; word < 2; ++word) {
      std::uint64_t bits = w_[word];
      while (bits) {
        int d = (word << 6) + std::countr_zero(bits);
        f(d);
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int d) { out.push_back(d); });
    return out;
  }

 private:
  static void check_index(int d) {
    if (d < 0 || d >= kCapacity) throw std::out_of_range("doctor index out of range");
  }

  std::array<std::uint64_t, 2> w_{0, 0};
};

}  // namespace approxstable
