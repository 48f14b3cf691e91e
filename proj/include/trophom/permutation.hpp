#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trophom {

// A permutation of {0..m-1}, stored as its image table: i maps to image[i].
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint8_t> image);

    static Permutation identity(int degree);

    // Cycle notation, zero-based, whitespace-separated points: "(0 1)(2 3)".
    // "()" is the identity. Overlapping cycles are applied left to right.
    static Permutation parse(std::string_view text, int degree);

    int degree() const { return static_cast<int>(image_.size()); }
    int apply(int i) const { return image_[static_cast<std::size_t>(i)]; }
    int operator[](int i) const { return apply(i); }

    // (a.after(b))(i) == a(b(i))
    Permutation after(const Permutation& b) const;
    Permutation inverse() const;

    bool is_identity() const;
    int moved_points() const;

    std::string cycle_string() const;

    const std::vector<std::uint8_t>& image() const { return image_; }

    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint8_t> image_;
};

}  // namespace trophom
