#include "trophom/homology.hpp"

#include <sstream>

#include "trophom/complex_reduce.hpp"
#include "trophom/errors.hpp"

namespace trophom {

std::string HomologyGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rank == 1) {
        out << "Z";
        first = false;
    } else if (rank > 1) {
        out << "Z^" << rank;
        first = false;
    }
    for (const Int& d : invariant_factors) {
        if (!first) out << " + ";
        out << "Z/" << d.get_str();
        first = false;
    }
    return out.str();
}

namespace {

std::vector<Int> torsion_from_diagonal(const std::vector<Int>& diagonal) {
    std::vector<Int> out;
    for (const Int& d : diagonal)
        if (d > 1) out.push_back(d);
    return out;
}

}  // namespace

HomologyGroup homology_at(const SparseIntMatrix& d_k, const SparseIntMatrix& d_k1,
                          const ProgressFn& progress) {
    if (d_k.cols() != d_k1.rows())
        throw InvalidInput("chain group dimension mismatch between d_k and d_k1");
    if (!d_k.multiplied_by(d_k1).is_zero())
        throw ConsistencyError("boundary maps do not compose to zero");

    std::size_t rank_k = rank_from_diagonal(smith_diagonal(d_k, progress));
    std::vector<Int> diag_k1 = smith_diagonal(d_k1, progress);
    std::size_t rank_k1 = rank_from_diagonal(diag_k1);

    std::size_t nullity = d_k.cols() - rank_k;
    if (rank_k1 > nullity) throw ConsistencyError("image rank exceeds kernel rank");

    HomologyGroup out;
    out.rank = nullity - rank_k1;
    out.invariant_factors = torsion_from_diagonal(diag_k1);
    return out;
}

QuotientHomology quotient_homology(const QuotientComplex& complex, const ProgressFn& progress) {
    const int dims = complex.dim() + 1;  // chain groups 0..p-1
    QuotientHomology out;
    out.orbit_counts = complex.orbit_counts();

    for (int k = 1; k + 1 < dims; ++k) {
        if (!complex.boundaries[static_cast<std::size_t>(k)]
                 .multiplied_by(complex.boundaries[static_cast<std::size_t>(k + 1)])
                 .is_zero())
            throw ConsistencyError("boundary maps do not compose to zero");
    }

    // Cancel unit incidence pairs across the whole complex first; the
    // residual complex has the same homology and is usually tiny.
    ReducedComplex reduced = reduce_complex(complex.boundaries, out.orbit_counts, progress);

    // One Smith form per residual boundary serves both the rank to its left
    // and the torsion to its right.
    std::vector<std::size_t> rank(static_cast<std::size_t>(dims) + 1, 0);
    std::vector<std::vector<Int>> torsion(static_cast<std::size_t>(dims) + 1);
    for (int k = 1; k < dims; ++k) {
        std::vector<Int> diag =
            smith_diagonal(reduced.boundaries[static_cast<std::size_t>(k)], progress);
        rank[static_cast<std::size_t>(k)] = rank_from_diagonal(diag);
        torsion[static_cast<std::size_t>(k)] = torsion_from_diagonal(diag);
    }

    for (int k = 0; k < dims; ++k) {
        std::size_t n_k = reduced.counts[static_cast<std::size_t>(k)];
        std::size_t r_in = rank[static_cast<std::size_t>(k + 1)];
        std::size_t r_out = rank[static_cast<std::size_t>(k)];
        if (r_out + r_in > n_k) throw ConsistencyError("rank bookkeeping out of range");
        HomologyGroup h;
        h.rank = n_k - r_out - r_in;
        h.invariant_factors = torsion[static_cast<std::size_t>(k + 1)];
        if (k == 0) {
            if (h.rank < 1) throw ConsistencyError("quotient complex is not connected");
            h.rank -= 1;  // reduced degree 0
        }
        out.reduced.push_back(std::move(h));
    }
    return out;
}

std::vector<HomologyGroup> reduced_sphere_quotient_homology(int p, const PermGroup& group,
                                                            const SphereQuotientOptions& options) {
    if (options.use_shortcut && group.contains_transposition()) {
        // A transposition acts as a reflection of the simplex, so the
        // quotient sphere is contractible.
        return std::vector<HomologyGroup>(static_cast<std::size_t>(p));
    }
    QuotientComplex complex = build_quotient(p, group, options.level, options.progress);
    return quotient_homology(complex, options.progress).reduced;
}

std::vector<HomologyGroup> level_checked_sphere_quotient_homology(int p, const PermGroup& group,
                                                                  const ProgressFn& progress) {
    SphereQuotientOptions opts;
    opts.use_shortcut = false;
    opts.progress = progress;
    opts.level = 1;
    std::vector<HomologyGroup> level1 = reduced_sphere_quotient_homology(p, group, opts);
    opts.level = 2;
    std::vector<HomologyGroup> level2 = reduced_sphere_quotient_homology(p, group, opts);
    if (level1 != level2) {
        std::ostringstream msg;
        msg << "subdivision levels disagree for p=" << p << ", |G|=" << group.order();
        for (std::size_t k = 0; k < level1.size(); ++k)
            msg << "; deg " << k << ": " << level1[k].to_string() << " vs "
                << level2[k].to_string();
        throw ConsistencyError(msg.str());
    }
    return level1;
}

}  // namespace trophom
