#include "trophom/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "trophom/errors.hpp"

namespace trophom {

Permutation::Permutation(std::vector<std::uint8_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (std::uint8_t v : image_) {
        if (v >= image_.size() || seen[v])
            throw InvalidInput("permutation image is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(int degree) {
    if (degree < 0) throw InvalidInput("negative permutation degree");
    std::vector<std::uint8_t> img(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text, int degree) {
    if (degree < 0 || degree > 255) throw InvalidInput("unsupported permutation degree");
    Permutation result = identity(degree);

    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw InvalidInput("empty permutation string");

    while (pos < text.size()) {
        skip_ws();
        if (pos == text.size()) break;
        if (text[pos] != '(') throw InvalidInput("expected '(' in cycle notation");
        ++pos;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (pos == text.size()) throw InvalidInput("unterminated cycle");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw InvalidInput("expected point index in cycle");
            int value = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                value = value * 10 + (text[pos] - '0');
                if (value > 255) throw InvalidInput("point index out of range");
                ++pos;
            }
            if (value >= degree) throw InvalidInput("cycle point exceeds degree");
            cycle.push_back(value);
        }
        if (cycle.size() == 1) throw InvalidInput("singleton cycle");
        for (std::size_t i = 0; i < cycle.size(); ++i)
            for (std::size_t j = i + 1; j < cycle.size(); ++j)
                if (cycle[i] == cycle[j]) throw InvalidInput("repeated point in cycle");

        if (!cycle.empty()) {
            Permutation c = identity(degree);
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                int from = cycle[i];
                int to = cycle[(i + 1) % cycle.size()];
                c.image_[static_cast<std::size_t>(from)] = static_cast<std::uint8_t>(to);
            }
            result = c.after(result);
        }
    }
    skip_ws();
    if (pos != text.size()) throw InvalidInput("trailing characters in permutation string");
    return result;
}

Permutation Permutation::after(const Permutation& b) const {
    if (degree() != b.degree()) throw InvalidInput("permutation degree mismatch");
    std::vector<std::uint8_t> img(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) img[i] = image_[b.image_[i]];
    Permutation r;
    r.image_ = std::move(img);
    return r;
}

Permutation Permutation::inverse() const {
    std::vector<std::uint8_t> img(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) img[image_[i]] = static_cast<std::uint8_t>(i);
    Permutation r;
    r.image_ = std::move(img);
    return r;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i) return false;
    return true;
}

int Permutation::moved_points() const {
    int moved = 0;
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i) ++moved;
    return moved;
}

std::string Permutation::cycle_string() const {
    std::ostringstream out;
    std::vector<bool> visited(image_.size(), false);
    bool any = false;
    for (std::size_t start = 0; start < image_.size(); ++start) {
        if (visited[start] || image_[start] == start) continue;
        any = true;
        out << '(';
        std::size_t cur = start;
        bool first = true;
        do {
            visited[cur] = true;
            if (!first) out << ' ';
            out << cur;
            first = false;
            cur = image_[cur];
        } while (cur != start);
        out << ')';
    }
    if (!any) return "()";
    return out.str();
}

}  // namespace trophom
