#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "bolza/surface.hpp"

// Enumeration of the Fuchsian group of the surface: all deck transformations
// whose basepoint translate f(0) lies within a displacement cutoff.  Elements
// are found by breadth-first growth of freely reduced generator words and
// deduplicated projectively (a matrix and its negation are the same element).

namespace bolza {

/// Generator word: letter +k stands for t_{k-1}, letter -k for t_{k-1}^{-1}.
using Letter = std::int8_t;
using Word = std::vector<Letter>;

inline Letter letter_of_pairing(int j, int genus) {
    const int n = 2 * genus;
    return static_cast<Letter>(j < n ? j + 1 : -(j - n + 1));
}

inline int pairing_of_letter(Letter l, int genus) {
    return l > 0 ? l - 1 : 2 * genus + (-l - 1);
}

inline Word invert_word(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (Letter& l : r)
        l = static_cast<Letter>(-l);
    return r;
}

/// Letter image under conjugation by the rotation through pi/2g, which sends
/// t_i to t_{i+1}; the index wraps with an inverse: t_{2g-1} -> t_0^{-1}.
inline Letter shift_letter(Letter l, int genus) {
    const int i = std::abs(l) - 1;
    const int sign = l > 0 ? 1 : -1;
    if (i + 1 == 2 * genus)
        return static_cast<Letter>(-sign);
    return static_cast<Letter>(sign * (i + 2));
}

inline Word shift_word(const Word& w, int genus) {
    Word r = w;
    for (Letter& l : r)
        l = shift_letter(l, genus);
    return r;
}

/// Remove adjacent inverse pairs until the word is freely reduced.
inline Word free_reduce(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (Letter l : w) {
        if (!r.empty() && r.back() == -l)
            r.pop_back();
        else
            r.push_back(l);
    }
    return r;
}

/// Ordered product of the word's generators.
inline Isometry word_isometry(const SurfaceParams& sp, const Word& w) {
    Isometry f;
    for (Letter l : w)
        f = compose(f, sp.side_pairing(pairing_of_letter(l, sp.genus)));
    return f;
}

inline std::string word_to_string(const Word& w) {
    if (w.empty())
        return "e";
    std::string s;
    for (Letter l : w) {
        if (!s.empty())
            s += ' ';
        s += 't';
        s += std::to_string(std::abs(l) - 1);
        if (l < 0)
            s += '\'';
    }
    return s;
}

/// Group element: its isometry, the basepoint displacement delta(0, f(0)),
/// and a shortest generator word found for it (the isometry equals the
/// ordered product of the word).
struct GroupElement {
    Isometry iso;
    double displacement = 0.0;
    Word word;

    bool is_group_identity() const { return word.empty(); }
};

/// Displacement of the basepoint: delta(0, f(0)) = 2 asinh(|c|).
inline double basepoint_displacement(const Isometry& f) {
    return 2.0 * std::asinh(std::abs(f.c()));
}

namespace detail {

// Spatial hash of the basepoint orbit position f(0) for group-element
// deduplication.  Distinct elements f, g keep delta(f(0), g(0)) equal to the
// displacement of the non-identity element f^-1 g, which is at least the
// systole of the group (> 3): orbit positions are far apart in the hyperbolic
// metric, and the position c-bar / a-bar is immune to the determinant
// renormalization noise that contaminates raw matrix entries (a common scale
// factor cancels in the ratio).  Coordinates are quantized to cells of 1e-8;
// lookups probe the neighboring cell in every coordinate within 1e-10 of a
// cell boundary, so the same element rounded along two word paths cannot
// straddle into a missed cell.  Matches must lie within hyperbolic distance 1
// (noise is below 1e-9; distinct elements are separated by more than 3).
class ElementIndex {
public:
    static constexpr double cell = 1e-8;
    static constexpr double band = 1e-10;

    void reserve(std::size_t n) { rehash(slot_count_for(n)); }

    /// Orbit position f(0) = conj(c) / conj(a), inside the open disk.
    static complex orbit_of(const Isometry& f) {
        return std::conj(f.c() / f.a());
    }

    /// True when two orbit positions are within hyperbolic distance 1, via
    /// |u - v|^2 < sinh^2(1/2) (1 - |u|^2)(1 - |v|^2); never true for
    /// positions of distinct group elements.
    static bool same_orbit(complex u, complex v) {
        const double du = 1.0 - std::norm(u);
        const double dv = 1.0 - std::norm(v);
        const double sh = std::sinh(0.5);
        return std::norm(u - v) < sh * sh * du * dv;
    }

    /// Index of a stored element matching f, or -1.
    template <class Elements>
    std::int64_t find(const Isometry& f, const Elements& elems) const {
        if (slots_.empty())
            return -1;
        const complex z = orbit_of(f);
        const double x[2] = {z.real(), z.imag()};
        std::int64_t base[2];
        int alt_dim[2], alt_count = 0;
        std::int64_t alt[2];
        for (int i = 0; i < 2; ++i) {
            const double q = x[i] / cell;
            base[i] = llround(q);
            const double frac = q - static_cast<double>(base[i]);
            if (std::abs(frac) > 0.5 - band / cell) {
                alt_dim[alt_count] = i;
                alt[alt_count] = base[i] + (frac > 0.0 ? 1 : -1);
                ++alt_count;
            }
        }
        std::int64_t cellkey[2];
        for (int m = 0; m < (1 << alt_count); ++m) {
            for (int i = 0; i < 2; ++i)
                cellkey[i] = base[i];
            for (int b = 0; b < alt_count; ++b)
                if (m & (1 << b))
                    cellkey[alt_dim[b]] = alt[b];
            const std::uint64_t fp = fingerprint(cellkey);
            const std::int64_t idx = probe_find(fp, z, elems);
            if (idx >= 0)
                return idx;
        }
        return -1;
    }

    /// Record element idx (stored under its own cell only).
    void insert(const Isometry& f, std::uint32_t idx) {
        if (count_ + 1 > (slots_.size() * 7) / 10)
            rehash(slots_.empty() ? 1024 : slots_.size() * 2);
        const complex z = orbit_of(f);
        const std::int64_t cellkey[2] = {llround(z.real() / cell),
                                         llround(z.imag() / cell)};
        probe_insert(fingerprint(cellkey), idx);
        ++count_;
    }

    std::size_t size() const { return count_; }

private:
    struct Slot {
        std::uint64_t fp = 0; // 0 = empty
        std::uint32_t idx = 0;
    };

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t fingerprint(const std::int64_t k[2]) {
        std::uint64_t h = 0x2545f4914f6cdd1dULL;
        for (int i = 0; i < 2; ++i)
            h = mix(h ^ static_cast<std::uint64_t>(k[i]));
        return h ? h : 1;
    }

    static std::size_t slot_count_for(std::size_t n) {
        std::size_t s = 1024;
        while (s * 7 / 10 < n + 1)
            s *= 2;
        return s;
    }

    template <class Elements>
    std::int64_t probe_find(std::uint64_t fp, complex z, const Elements& elems) const {
        const std::size_t mask = slots_.size() - 1;
        std::size_t i = fp & mask;
        while (slots_[i].fp != 0) {
            if (slots_[i].fp == fp &&
                same_orbit(orbit_of(elems[slots_[i].idx].iso), z))
                return slots_[i].idx;
            i = (i + 1) & mask;
        }
        return -1;
    }

    void probe_insert(std::uint64_t fp, std::uint32_t idx) {
        const std::size_t mask = slots_.size() - 1;
        std::size_t i = fp & mask;
        while (slots_[i].fp != 0)
            i = (i + 1) & mask;
        slots_[i] = Slot{fp, idx};
    }

    void rehash(std::size_t n) {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(n, Slot{});
        for (const Slot& s : old)
            if (s.fp != 0)
                probe_insert(s.fp, s.idx);
    }

    std::vector<Slot> slots_;
    std::size_t count_ = 0;
};

inline bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace detail

struct BallOptions {
    /// Extra displacement beyond the cutoff within which intermediate words
    /// keep being extended.  Word paths can bulge slightly outside the ball
    /// they end in; the closure passes below plus this slack recover them.
    double prune_margin = 0.6;
    /// Cap on stored (ball + margin) elements before giving up.
    std::size_t element_cap = 1'000'000;
};

/// The set of group elements with basepoint displacement at most the cutoff,
/// sorted by (displacement, word length, word) and indexed for fast projective
/// lookups.
class TranslateBall {
public:
    TranslateBall(SurfaceParams sp, double cutoff, std::vector<GroupElement> elems)
        : params_(std::move(sp)), cutoff_(cutoff), elements_(std::move(elems)) {
        for (std::uint32_t i = 0; i < elements_.size(); ++i)
            index_.insert(elements_[i].iso, i);
    }

    const SurfaceParams& params() const { return params_; }
    double cutoff() const { return cutoff_; }
    std::size_t size() const { return elements_.size(); }
    const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<GroupElement>& elements() const { return elements_; }

    /// Index of the group element equal to f (matched by orbit position), or -1.
    std::int64_t find(const Isometry& f) const { return index_.find(f, elements_); }

    bool contains(const Isometry& f) const { return find(f) >= 0; }

private:
    SurfaceParams params_;
    double cutoff_;
    std::vector<GroupElement> elements_;
    detail::ElementIndex index_;
};

/// Breadth-first enumeration of all group elements with displacement <= cutoff.
///
/// Words grow one side-pairing at a time (immediate backtracking skipped) and
/// are extended while their displacement stays within cutoff + prune_margin.
/// After the search drains, the set is closed under inversion and under
/// conjugation by the pi/2g rotation — both preserve displacement and map
/// generator words to generator words — which recovers any stragglers whose
/// only monotone word paths leave the pruned region.
inline TranslateBall enumerate_ball(const SurfaceParams& sp, double cutoff,
                                    const BallOptions& opts = BallOptions{}) {
    if (cutoff < 0.0)
        throw std::invalid_argument("enumerate_ball: negative cutoff");
    const double store_limit = cutoff + opts.prune_margin + 1e-9;
    const int n_pairings = 4 * sp.genus;

    std::vector<GroupElement> store;
    detail::ElementIndex index;
    {
        const double expect =
            (std::cosh(store_limit) - 1.0) / (2.0 * (sp.genus - 1)) + 64.0;
        const double guess = std::min(expect * 1.3, static_cast<double>(opts.element_cap));
        store.reserve(static_cast<std::size_t>(guess));
        index.reserve(static_cast<std::size_t>(guess));
    }

    auto push = [&](const Isometry& f, double disp, Word w) {
        if (store.size() >= opts.element_cap)
            throw resource_limit("enumerate_ball: element cap exceeded");
        index.insert(f, static_cast<std::uint32_t>(store.size()));
        store.push_back(GroupElement{f, disp, std::move(w)});
    };

    push(Isometry(), 0.0, Word{});

    std::size_t head = 0;
    bool closure_added = true;
    while (closure_added) {
        // Drain the breadth-first queue.
        while (head < store.size()) {
            const std::size_t cur = head++;
            const Letter last =
                store[cur].word.empty() ? Letter{0} : store[cur].word.back();
            for (int j = 0; j < n_pairings; ++j) {
                const Letter l = letter_of_pairing(j, sp.genus);
                if (last != 0 && l == static_cast<Letter>(-last))
                    continue; // cancels the previous letter
                const Isometry child =
                    compose(store[cur].iso, sp.side_pairing(j));
                const double disp = basepoint_displacement(child);
                if (disp > store_limit)
                    continue;
                if (index.find(child, store) >= 0)
                    continue;
                Word w = store[cur].word;
                w.push_back(l);
                push(child, disp, std::move(w));
            }
        }
        // Closure passes; any addition re-enters the queue above.
        closure_added = false;
        const std::size_t snapshot = store.size();
        for (std::size_t i = 0; i < snapshot; ++i) {
            const Isometry inv = invert(store[i].iso);
            if (index.find(inv, store) < 0) {
                push(inv, store[i].displacement, invert_word(store[i].word));
                closure_added = true;
            }
        }
        const complex phase = std::polar(1.0, -pi / (2.0 * sp.genus));
        for (std::size_t i = 0; i < snapshot; ++i) {
            if (store[i].word.empty())
                continue;
            // Conjugation by the pi/2g rotation keeps a and rotates c.
            const Isometry conj(store[i].iso.a(), store[i].iso.c() * phase);
            if (index.find(conj, store) < 0) {
                push(conj, store[i].displacement, shift_word(store[i].word, sp.genus));
                closure_added = true;
            }
        }
    }

    std::vector<GroupElement> final_set;
    final_set.reserve(store.size());
    for (GroupElement& e : store)
        if (e.displacement <= cutoff + 1e-9)
            final_set.push_back(std::move(e));
    std::sort(final_set.begin(), final_set.end(),
              [](const GroupElement& x, const GroupElement& y) {
                  if (x.displacement != y.displacement)
                      return x.displacement < y.displacement;
                  return detail::word_less(x.word, y.word);
              });
    return TranslateBall(sp, cutoff, std::move(final_set));
}

/// Length of the shortest closed geodesic: the minimum translation length
/// 2 arccosh(|tr|/2) over non-identity elements.  Requires cutoff >= 2s so the
/// minimum is attained inside the ball.
inline double systole(const TranslateBall& ball) {
    const double need = 2.0 * ball.params().side_length;
    if (ball.cutoff() < need - 1e-9)
        throw insufficient_ball("systole: ball cutoff below 2s");
    double best = std::numeric_limits<double>::infinity();
    for (const GroupElement& e : ball.elements()) {
        if (e.is_group_identity())
            continue;
        const double tr = std::abs(e.iso.trace());
        if (tr <= 2.0 + 1e-9)
            throw numerical_pathology("systole: non-hyperbolic element " +
                                      word_to_string(e.word));
        best = std::min(best, 2.0 * acosh_stable(tr / 2.0));
    }
    return best;
}

/// All nonempty freely reduced words of length <= max_word_length whose
/// product is the identity, found by breadth-first word growth with element
/// deduplication: whenever two words land on the same element, their quotient
/// is a candidate relator.  Requires max_word_length >= 4g (the shortest
/// relator of the group has length exactly 4g).
inline std::vector<Word> find_identity_relators(const SurfaceParams& sp,
                                                int max_word_length) {
    if (max_word_length < 4 * sp.genus)
        throw std::invalid_argument("find_identity_relators: length below 4g");
    const int radius = (max_word_length + 1) / 2;
    {
        // Freely reduced word count through the search radius.
        double words = 1.0;
        double layer = 4.0 * sp.genus;
        for (int r = 1; r <= radius; ++r) {
            words += layer;
            layer *= 4.0 * sp.genus - 1.0;
        }
        if (words > 5e6)
            throw resource_limit("find_identity_relators: search space too large");
    }

    std::vector<GroupElement> store;
    detail::ElementIndex index;
    auto push = [&](const Isometry& f, Word w) {
        index.insert(f, static_cast<std::uint32_t>(store.size()));
        store.push_back(GroupElement{f, 0.0, std::move(w)});
    };
    push(Isometry(), Word{});

    std::set<Word> relators;
    auto offer = [&](const Word& w, const Word& u) {
        // w and u reach the same element, so w u^{-1} is an identity word.
        Word r = w;
        const Word ui = invert_word(u);
        r.insert(r.end(), ui.begin(), ui.end());
        r = free_reduce(r);
        if (r.empty() || static_cast<int>(r.size()) > max_word_length)
            return;
        if (isometry_distance(word_isometry(sp, r), Isometry()) > 1e-8)
            return;
        relators.insert(std::move(r));
    };

    std::size_t head = 0;
    while (head < store.size()) {
        const std::size_t cur = head++;
        if (static_cast<int>(store[cur].word.size()) >= radius)
            continue;
        for (int j = 0; j < 4 * sp.genus; ++j) {
            const Letter l = letter_of_pairing(j, sp.genus);
            if (!store[cur].word.empty() &&
                l == static_cast<Letter>(-store[cur].word.back()))
                continue;
            const Isometry child = compose(store[cur].iso, sp.side_pairing(j));
            Word w = store[cur].word;
            w.push_back(l);
            const std::int64_t hit = index.find(child, store);
            if (hit >= 0) {
                offer(w, store[hit].word);
                continue; // the element is already covered by a shorter word
            }
            push(child, std::move(w));
        }
    }

    std::vector<Word> out(relators.begin(), relators.end());
    std::sort(out.begin(), out.end(), detail::word_less);
    return out;
}

/// CSV dump of the ball: word, canonical matrix entries, displacement.
inline void write_ball_csv(const TranslateBall& ball, std::ostream& os) {
    os << "word,a_re,a_im,c_re,c_im,displacement\n";
    char buf[192];
    for (const GroupElement& e : ball.elements()) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      e.iso.a().real(), e.iso.a().imag(), e.iso.c().real(),
                      e.iso.c().imag(), e.displacement);
        os << word_to_string(e.word) << buf;
    }
}

/// The dual polygon centered at vertex v_k: its 4g vertices are the orbit
/// points f(0) at distance R from v_k (the centers of the polygon copies
/// meeting at that vertex), in counterclockwise order around v_k starting from
/// the smallest non-negative bearing.  Requires a ball of cutoff >= 2R.
inline Polygon dual_polygon(const SurfaceParams& sp, int k, const TranslateBall& ball) {
    if (k < 0 || k >= sp.side_count())
        throw std::invalid_argument("dual_polygon: vertex index out of range");
    if (ball.cutoff() < 2.0 * sp.circumradius - 1e-9)
        throw insufficient_ball("dual_polygon: ball cutoff below 2R");
    const DiskPoint& vk = sp.vertices[k];
    std::vector<DiskPoint> pts;
    for (const GroupElement& e : ball.elements()) {
        const DiskPoint p = e.iso(DiskPoint());
        if (std::abs(disk_distance(p, vk) - sp.circumradius) <= 1e-9)
            pts.push_back(p);
    }
    if (static_cast<int>(pts.size()) != sp.side_count())
        throw numerical_pathology("dual_polygon: expected 4g orbit points, found " +
                                  std::to_string(pts.size()));
    std::vector<double> bearing(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double b = direction_from(vk, pts[i]);
        if (b < 0.0)
            b += 2.0 * pi;
        bearing[i] = b;
    }
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return bearing[x] < bearing[y]; });
    std::vector<DiskPoint> sorted;
    sorted.reserve(pts.size());
    for (std::size_t i : order)
        sorted.push_back(pts[i]);
    return Polygon{vk, sorted};
}

/// dual_isometry with its defining postcondition checked against the ball:
/// the half-turn must carry the fundamental polygon's vertex set onto the
/// dual polygon's vertex set within 1e-9.
inline Isometry dual_isometry_checked(const SurfaceParams& sp, int k,
                                      const TranslateBall& ball) {
    const Isometry phi = dual_isometry(sp, k);
    const Polygon dual = dual_polygon(sp, k, ball);
    for (const DiskPoint& v : sp.vertices) {
        const DiskPoint img = phi(v);
        double best = std::numeric_limits<double>::infinity();
        for (const DiskPoint& d : dual.vertices)
            best = std::min(best, disk_distance(img, d));
        if (best > 1e-9)
            throw numerical_pathology(
                "dual_isometry_checked: image misses the dual polygon vertex set");
    }
    return phi;
}

} // namespace bolza
