#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "groups.hpp"
#include "metrics.hpp"

namespace grpmetric {

inline std::vector<Element> identity_image(std::size_t n) {
    std::vector<Element> v(n);
    std::iota(v.begin(), v.end(), Element{0});
    return v;
}

/// A bijection of 0..n-1. Composition (a * b)(x) = a(b(x)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Element> image) : img_(std::move(image)) {
        std::vector<char> seen(img_.size(), 0);
        for (Element y : img_) {
            if (y >= img_.size() || seen[y]) throw std::invalid_argument("not a permutation");
            seen[y] = 1;
        }
    }
    static Permutation identity(std::size_t n) {
        std::vector<Element> v(n);
        std::iota(v.begin(), v.end(), Element{0});
        return Permutation(std::move(v));
    }
    /// Disjoint cycles over 0..n-1; unlisted points are fixed.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Element>>& cycles) {
        std::vector<Element> v(n);
        std::iota(v.begin(), v.end(), Element{0});
        std::vector<char> used(n, 0);
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] >= n || used[c[i]]) throw std::invalid_argument("cycles are not disjoint over 0..n-1");
                used[c[i]] = 1;
                v[c[i]] = c[(i + 1) % c.size()];
            }
        return Permutation(std::move(v));
    }

    std::size_t size() const { return img_.size(); }
    Element operator()(Element x) const { return img_[x]; }
    const std::vector<Element>& image() const { return img_; }
    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }
    Permutation operator*(const Permutation& b) const {
        if (b.size() != size()) throw std::invalid_argument("composing permutations of different degree");
        std::vector<Element> v(size());
        for (std::size_t x = 0; x < size(); ++x) v[x] = img_[b.img_[x]];
        return Permutation(std::move(v));
    }
    Permutation inverse() const {
        std::vector<Element> v(size());
        for (std::size_t x = 0; x < size(); ++x) v[img_[x]] = static_cast<Element>(x);
        return Permutation(std::move(v));
    }
    std::vector<std::vector<Element>> cycles() const {
        std::vector<std::vector<Element>> out;
        std::vector<char> seen(size(), 0);
        for (Element x = 0; x < size(); ++x) {
            if (seen[x] || img_[x] == x) continue;
            std::vector<Element> c;
            for (Element y = x; !seen[y]; y = img_[y]) {
                seen[y] = 1;
                c.push_back(y);
            }
            out.push_back(std::move(c));
        }
        return out;
    }
    bool is_full_cycle() const {
        const auto c = cycles();
        return size() == 1 || (c.size() == 1 && c.front().size() == size());
    }
    /// "(0 1 2)(3 4)"; "()" for the identity.
    std::string to_cycle_string() const {
        std::string out;
        for (const auto& c : cycles()) out += "(" + join_numbers(c, " ") + ")";
        return out.empty() ? "()" : out;
    }
    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

private:
    std::vector<Element> img_;
};

struct IsometryCheck {
    bool ok = false;
    bool injective = false;
    std::optional<std::pair<Element, Element>> witness;
    std::uint64_t pairs_checked = 0;
    std::string reason;
};

/// Exhaustive check of injectivity and d1(x,y) = d2(f(x), f(y)) over all unordered pairs.
inline IsometryCheck is_isometric_embedding(std::span<const Element> f, const MetricTable& d1, const MetricTable& d2) {
    if (f.size() != d1.size()) throw std::invalid_argument("map is not total on the source carrier");
    IsometryCheck r;
    std::vector<Element> first(d2.size(), npos);
    for (Element x = 0; x < f.size(); ++x) {
        if (f[x] >= d2.size()) throw std::invalid_argument("map leaves the target carrier");
        if (first[f[x]] != npos) {
            r.witness = std::make_pair(first[f[x]], x);
            r.reason = "not injective";
            return r;
        }
        first[f[x]] = x;
    }
    r.injective = true;
    for (Element x = 0; x < f.size(); ++x)
        for (Element y = x + 1; y < f.size(); ++y) {
            ++r.pairs_checked;
            if (d1(x, y) != d2(f[x], f[y])) {
                r.witness = std::make_pair(x, y);
                r.reason = "distance " + std::to_string(d1(x, y)) + " maps to " + std::to_string(d2(f[x], f[y]));
                return r;
            }
        }
    r.ok = true;
    return r;
}

enum class EmbeddingKind { psi, base_q, eta, chain_iso, rm1, composed, transfer, search, identity, custom };

inline const char* to_string(EmbeddingKind k) {
    switch (k) {
        case EmbeddingKind::psi: return "psi";
        case EmbeddingKind::base_q: return "base_q";
        case EmbeddingKind::eta: return "eta";
        case EmbeddingKind::chain_iso: return "chain_iso";
        case EmbeddingKind::rm1: return "rm1";
        case EmbeddingKind::composed: return "composed";
        case EmbeddingKind::transfer: return "transfer";
        case EmbeddingKind::search: return "search";
        case EmbeddingKind::identity: return "identity";
        case EmbeddingKind::custom: return "custom";
    }
    return "custom";
}

namespace detail {
inline std::string point_label(const MetricTable& d, Element x) {
    return d.group() ? d.group()->label(x) : std::to_string(x);
}
}  // namespace detail

/// Injective map between two dense carriers that preserves distances. The contract is
/// verified exhaustively whenever a map is built.
class EmbeddingMap {
public:
    /// Throws std::logic_error if the map is not an isometric embedding.
    static EmbeddingMap verified(EmbeddingKind kind, MetricTable source, MetricTable target, std::vector<Element> image) {
        const IsometryCheck c = is_isometric_embedding(image, source, target);
        if (!c.ok) {
            std::string at;
            if (c.witness) at = " at (" + std::to_string(c.witness->first) + "," + std::to_string(c.witness->second) + ")";
            throw std::logic_error(std::string(to_string(kind)) + " map is not an isometric embedding: " + c.reason + at);
        }
        EmbeddingMap m;
        m.kind_ = kind;
        m.source_ = std::move(source);
        m.target_ = std::move(target);
        m.image_ = std::move(image);
        m.pairs_checked_ = c.pairs_checked;
        return m;
    }
    static EmbeddingMap identity(const MetricTable& d) {
        std::vector<Element> img(d.size());
        std::iota(img.begin(), img.end(), Element{0});
        return verified(EmbeddingKind::identity, d, d, std::move(img));
    }

    EmbeddingKind kind() const { return kind_; }
    const MetricTable& source() const { return source_; }
    const MetricTable& target() const { return target_; }
    const std::vector<Element>& image() const { return image_; }
    Element operator()(Element x) const { return image_.at(x); }
    std::uint64_t pairs_checked() const { return pairs_checked_; }
    bool is_bijective() const { return source_.size() == target_.size(); }

    EmbeddingMap inverse() const {
        if (!is_bijective()) throw std::invalid_argument("only a bijective isometry has an inverse");
        std::vector<Element> inv(image_.size());
        for (Element x = 0; x < image_.size(); ++x) inv[image_[x]] = x;
        return verified(kind_, target_, source_, std::move(inv));
    }

    std::string to_json() const {
        return "{\"kind\": \"" + std::string(to_string(kind_)) + "\", \"source\": " + std::to_string(source_.size()) +
               ", \"target\": " + std::to_string(target_.size()) + ", \"image\": [" + join_numbers(image_, ", ") + "]}";
    }
    /// One line per source point: "x |-> f(x)" with group labels when available.
    std::string listing() const {
        std::string out;
        for (Element x = 0; x < image_.size(); ++x) {
            out += detail::point_label(source_, x) + " |-> " + detail::point_label(target_, image_[x]) + "\n";
        }
        return out;
    }

private:
    EmbeddingKind kind_ = EmbeddingKind::custom;
    MetricTable source_;
    MetricTable target_;
    std::vector<Element> image_;
    std::uint64_t pairs_checked_ = 0;
};

/// compose(f, g) = g o f. The target of f and the source of g must be the same table.
inline EmbeddingMap compose(const EmbeddingMap& f, const EmbeddingMap& g) {
    if (!f.target().same_entries(g.source())) {
        throw std::invalid_argument("compose: target of the first map is not the source of the second");
    }
    std::vector<Element> img(f.image().size());
    for (Element x = 0; x < img.size(); ++x) img[x] = g(f(x));
    return EmbeddingMap::verified(EmbeddingKind::composed, f.source(), g.target(), std::move(img));
}

using Word = std::vector<Element>;

inline Distance hamming_distance(const Word& a, const Word& b) {
    Distance d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

/// Isometric embedding into (A^len, Hamming) where the target is too large for a dense
/// table. Coordinates hold alphabet elements in the encoding of `alphabet_parent`.
class WordEmbedding {
public:
    static WordEmbedding verified(EmbeddingKind kind, MetricTable source, FiniteGroup alphabet_parent,
                                  std::size_t alphabet_size, std::vector<Word> words) {
        if (words.size() != source.size()) throw std::invalid_argument("word map is not total on the source");
        const std::size_t len = words.empty() ? 0 : words.front().size();
        for (const auto& w : words)
            if (w.size() != len) throw std::invalid_argument("words of unequal length");
        WordEmbedding e;
        e.kind_ = kind;
        e.alphabet_ = std::move(alphabet_parent);
        e.alphabet_size_ = alphabet_size;
        for (std::size_t x = 0; x < words.size(); ++x)
            for (std::size_t y = x + 1; y < words.size(); ++y) {
                ++e.pairs_checked_;
                const Distance h = hamming_distance(words[x], words[y]);
                if (h == 0) throw std::logic_error(std::string(to_string(kind)) + " word map is not injective");
                if (h != source(static_cast<Element>(x), static_cast<Element>(y))) {
                    throw std::logic_error(std::string(to_string(kind)) + " word map is not isometric at (" +
                                           std::to_string(x) + "," + std::to_string(y) + ")");
                }
            }
        e.source_ = std::move(source);
        e.words_ = std::move(words);
        return e;
    }

    EmbeddingKind kind() const { return kind_; }
    const MetricTable& source() const { return source_; }
    const std::vector<Word>& words() const { return words_; }
    const Word& operator()(Element x) const { return words_.at(x); }
    std::size_t length() const { return words_.empty() ? 0 : words_.front().size(); }
    std::size_t alphabet_size() const { return alphabet_size_; }
    /// Group whose encoding the coordinates use.
    const FiniteGroup& alphabet() const { return alphabet_; }
    /// |A|^len, saturated at 2^64-1.
    std::uint64_t target_size() const { return saturating_pow(alphabet_size_, length()); }
    std::uint64_t pairs_checked() const { return pairs_checked_; }
    Distance weight(Element x) const {
        Distance w = 0;
        for (Element c : words_.at(x)) w += c != alphabet_.identity();
        return w;
    }

    std::string to_json() const {
        std::string out = "{\"kind\": \"" + std::string(to_string(kind_)) + "\", \"source\": " +
                          std::to_string(source_.size()) + ", \"target\": " + std::to_string(target_size()) +
                          ", \"alphabet\": " + std::to_string(alphabet_size_) + ", \"length\": " +
                          std::to_string(length()) + ", \"image\": [";
        for (std::size_t x = 0; x < words_.size(); ++x) out += (x ? ", [" : "[") + join_numbers(words_[x], ", ") + "]";
        return out + "]}";
    }
    std::string listing() const {
        std::string out;
        for (Element x = 0; x < words_.size(); ++x) {
            std::string w;
            for (std::size_t i = 0; i < words_[x].size(); ++i) w += (i ? "," : "") + alphabet_.label(words_[x][i]);
            out += detail::point_label(source_, x) + " |-> (" + w + ")\n";
        }
        return out;
    }

private:
    EmbeddingKind kind_ = EmbeddingKind::custom;
    MetricTable source_;
    FiniteGroup alphabet_ = FiniteGroup::cyclic(1);
    std::size_t alphabet_size_ = 1;
    std::vector<Word> words_;
    std::uint64_t pairs_checked_ = 0;
};

}  // namespace grpmetric
