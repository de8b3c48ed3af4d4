#include "msset/anodyne.hpp"

#include <algorithm>
#include <deque>

namespace msset {

namespace {

bool same_marked(const MarkedSSet& a, const MarkedSSet& b) {
    return same_presentation(*a.space, *b.space) && a.marks == b.marks;
}

} // namespace

CheckResult check_certificate(const AnodyneCertificate& c, const MarkedMap& claimed) {
    if (!claimed.is_mono()) return {false, "claimed map is not a monomorphism"};
    if (!same_marked(c.start, claimed.src))
        return {false, "certificate start differs from the claimed source"};

    MarkedSSet stage = c.start;
    SimplicialMap inclusion = SimplicialMap::identity(stage.space);
    for (size_t t = 0; t < c.steps.size(); ++t) {
        const CellStep& step = c.steps[t];
        MarkedMap gen = generator(step.gen, c.a2_depth);
        if (!same_marked(gen.src, step.attaching.src))
            return {false, "step " + std::to_string(t) + ": attaching source is not the generator source"};
        if (!same_marked(stage, step.attaching.tgt))
            return {false, "step " + std::to_string(t) + ": attaching target is not the current stage"};
        try {
            step.attaching.validate();
        } catch (const MssetError& e) {
            return {false, "step " + std::to_string(t) + ": " + e.what()};
        }
        MarkedPushout po = marked_pushout(gen, step.attaching);
        stage = po.space;
        inclusion = compose(po.from_x.map, inclusion);
    }

    // identification: stored or searched, must commute with the inclusion
    std::map<SimplexId, SimplexId> forced;
    const SSetPtr& A = c.start.space;
    for (int d = 0; d <= A->dim(); ++d)
        for (int idx = 0; idx < A->count(d); ++idx) {
            SimplexRef through = inclusion.apply(SimplexId{d, idx});
            SimplexRef direct = claimed.apply(SimplexId{d, idx});
            if (through.is_degenerate() || direct.is_degenerate())
                return {false, "stage inclusion is not a monomorphism"};
            forced[through.base] = direct.base;
        }
    if (c.identification) {
        const MarkedMap& phi = *c.identification;
        if (!same_marked(phi.src, stage)) return {false, "identification source mismatch"};
        if (!same_marked(phi.tgt, claimed.tgt)) return {false, "identification target mismatch"};
        try {
            phi.validate();
        } catch (const MssetError& e) {
            return {false, std::string("identification: ") + e.what()};
        }
        if (!phi.map.is_mono() || stage.space->count_vector() != claimed.tgt.space->count_vector())
            return {false, "identification is not an isomorphism"};
        if (stage.marks.size() != claimed.tgt.marks.size())
            return {false, "identification does not match markings"};
        if (!same_images(compose(phi.map, inclusion), claimed.map))
            return {false, "identification does not commute with the inclusion"};
        return {true, ""};
    }
    auto iso = marked_isomorphism(stage, claimed.tgt, forced);
    if (!iso) return {false, "no identification with the claimed codomain"};
    if (!same_images(compose(iso->map, inclusion), claimed.map))
        return {false, "identification does not commute with the inclusion"};
    return {true, ""};
}

// ---- search ----

namespace {

struct SearchState {
    std::set<SimplexId> cells; // nondegenerate simplices of B present
    std::set<int> marks;       // marked edge ids of B present
    friend auto operator<=>(const SearchState&, const SearchState&) = default;
};

struct StepChoice {
    GeneratorInstance gen;
    std::vector<std::vector<SimplexRef>> v_images; // map V -> B
};

// All valid attachments of `gen` to `state` inside B.
std::vector<StepChoice> step_choices(const MarkedMap& gen, const GeneratorInstance& gi,
                                     const MarkedSSet& B, const SearchState& state) {
    const SSetPtr& V = gen.tgt.space;

    // generators with an identity underlying map can only add marks, and only
    // on edges already present; skip them when no such mark is reachable
    if (gen.src.space->count_vector() == gen.tgt.space->count_vector()) {
        bool mark_available = false;
        for (int m : B.marks)
            if (state.cells.count({1, m}) && !state.marks.count(m)) mark_available = true;
        if (!mark_available) return {};
        if (gi.family == GenFamily::A2) {
            // marking through the walking isomorphism needs a reverse pair of
            // marked edges in the stage
            bool has_reverse_pair = false;
            const SSetPtr& BS = B.space;
            for (int e1 : B.marks) {
                if (!state.cells.count({1, e1})) continue;
                for (int e2 : B.marks) {
                    if (!state.cells.count({1, e2})) continue;
                    if (BS->faces_of({1, e1})[0] == BS->faces_of({1, e2})[1] &&
                        BS->faces_of({1, e1})[1] == BS->faces_of({1, e2})[0] &&
                        BS->faces_of({1, e1})[0] != BS->faces_of({1, e1})[1] &&
                        (!state.marks.count(e1) || !state.marks.count(e2)))
                        has_reverse_pair = true;
                }
            }
            if (!has_reverse_pair) return {};
        }
    }
    // V-simplices in the generator image, mapped back to U marks
    std::map<SimplexId, SimplexId> u_of;
    for (int d = 0; d <= gen.src.space->dim(); ++d)
        for (int idx = 0; idx < gen.src.space->count(d); ++idx)
            u_of[gen.apply(SimplexId{d, idx}).base] = SimplexId{d, idx};

    ImageConstraint constraint = [&](SimplexId w, const SimplexRef& cand) {
        auto it = u_of.find(w);
        if (it != u_of.end()) {
            if (!state.cells.count(cand.base)) return false;
            // marked edges of U must be marked in the stage
            if (w.dim == 1 && gen.src.marks.count(it->second.idx)) {
                if (!cand.is_degenerate() && !state.marks.count(cand.base.idx)) return false;
            }
        } else {
            if (cand.is_degenerate()) return false;
            if (state.cells.count(cand.base)) return false;
        }
        // mark preservation into B
        if (w.dim == 1 && gen.tgt.marks.count(w.idx) && !B.is_marked(cand)) return false;
        return true;
    };
    std::vector<StepChoice> out;
    for (const auto& v : enumerate_maps(V, B.space, constraint)) {
        // fresh cells pairwise distinct
        std::set<SimplexId> fresh;
        bool ok = true;
        for (int d = 0; d <= V->dim() && ok; ++d)
            for (int idx = 0; idx < V->count(d) && ok; ++idx) {
                if (u_of.count({d, idx})) continue;
                SimplexId target = v.apply(SimplexId{d, idx}).base;
                if (!fresh.insert(target).second) ok = false;
            }
        if (ok) out.push_back({gi, v.images()});
    }
    return out;
}

SearchState apply_choice(const SearchState& state, const MarkedMap& gen, const StepChoice& ch) {
    SearchState next = state;
    const SSetPtr& V = gen.tgt.space;
    std::set<SimplexId> u_image;
    for (int d = 0; d <= gen.src.space->dim(); ++d)
        for (int idx = 0; idx < gen.src.space->count(d); ++idx)
            u_image.insert(gen.apply(SimplexId{d, idx}).base);
    for (int d = 0; d <= V->dim(); ++d)
        for (int idx = 0; idx < V->count(d); ++idx)
            if (!u_image.count({d, idx}))
                next.cells.insert(ch.v_images[static_cast<size_t>(d)][static_cast<size_t>(idx)].base);
    for (int m : gen.tgt.marks) {
        const SimplexRef& e = ch.v_images[1][static_cast<size_t>(m)];
        if (!e.is_degenerate()) next.marks.insert(e.base.idx);
    }
    return next;
}

} // namespace

std::optional<AnodyneCertificate> search_certificate(const MarkedMap& i, FamilyClass cls,
                                                     const SearchBounds& bounds) {
    if (!i.is_mono()) throw InvalidParameter("search_certificate: map must be mono");
    const MarkedSSet& B = i.tgt;
    int a2_depth = B.space->dim() + 2;

    SearchState start;
    for (int d = 0; d <= i.src.space->dim(); ++d)
        for (int idx = 0; idx < i.src.space->count(d); ++idx)
            start.cells.insert(i.apply(SimplexId{d, idx}).base);
    for (int m : i.src.marks) start.marks.insert(i.apply(SimplexId{1, m}).base.idx);

    SearchState goal;
    for (int d = 0; d <= B.space->dim(); ++d)
        for (int idx = 0; idx < B.space->count(d); ++idx) goal.cells.insert({d, idx});
    goal.marks = B.marks;

    // generators of the class, pruned by the parameter bound
    std::vector<GeneratorInstance> gens;
    for (const auto& g : family_instances(cls, bounds.max_param)) gens.push_back(g);
    std::vector<MarkedMap> gen_maps;
    for (const auto& g : gens) gen_maps.push_back(generator(g, a2_depth));

    std::vector<std::pair<size_t, StepChoice>> path;

    // greedy phase: states only grow toward the goal, so take the first
    // progressing step each round; certificates may be as long as the data
    // they have to add
    {
        int greedy_cap = static_cast<int>(goal.cells.size() + goal.marks.size()) + 1;
        SearchState cur = start;
        std::vector<std::pair<size_t, StepChoice>> trail;
        while (!(cur == goal) && static_cast<int>(trail.size()) < greedy_cap) {
            bool moved = false;
            for (size_t gidx = 0; gidx < gens.size() && !moved; ++gidx)
                for (const auto& ch : step_choices(gen_maps[gidx], gens[gidx], B, cur)) {
                    SearchState next = apply_choice(cur, gen_maps[gidx], ch);
                    if (next == cur) continue;
                    trail.emplace_back(gidx, ch);
                    cur = next;
                    moved = true;
                    break;
                }
            if (!moved) break;
        }
        if (cur == goal) path = std::move(trail);
    }

    // fall back to breadth-first search within the declared bounds; hopeless
    // for large codomains, where the greedy phase is the real search
    if (path.empty() && !(start == goal) && B.space->total_count() <= 60) {
        std::map<SearchState, std::tuple<SearchState, size_t, StepChoice>> parent;
        std::deque<SearchState> frontier{start};
        std::set<SearchState> seen{start};
        std::map<SearchState, int> depth{{start, 0}};
        std::optional<SearchState> reached;
        while (!frontier.empty() && !reached) {
            SearchState cur = frontier.front();
            frontier.pop_front();
            if (depth[cur] >= bounds.max_steps) continue;
            if (static_cast<int>(seen.size()) > bounds.max_states) break;
            for (size_t gidx = 0; gidx < gens.size() && !reached; ++gidx) {
                for (const auto& ch : step_choices(gen_maps[gidx], gens[gidx], B, cur)) {
                    SearchState next = apply_choice(cur, gen_maps[gidx], ch);
                    if (next == cur) continue;
                    if (!seen.insert(next).second) continue;
                    parent.emplace(next, std::make_tuple(cur, gidx, ch));
                    depth[next] = depth[cur] + 1;
                    if (next == goal) {
                        reached = next;
                        break;
                    }
                    frontier.push_back(next);
                }
            }
        }
        if (!reached) return std::nullopt;
        SearchState cur = *reached;
        while (!(cur == start)) {
            auto& [prev, gidx, ch] = parent.at(cur);
            path.emplace_back(gidx, ch);
            cur = prev;
        }
        std::reverse(path.begin(), path.end());
    }
    if (path.empty() && !(start == goal)) return std::nullopt;

    // replay stages to express attaching maps against stage presentations
    AnodyneCertificate cert;
    cert.class_spec = cls;
    cert.start = i.src;
    cert.a2_depth = a2_depth;

    MarkedSSet stage = i.src;
    // stage nondegenerate id -> B id
    std::map<SimplexId, SimplexId> corr;
    for (int d = 0; d <= i.src.space->dim(); ++d)
        for (int idx = 0; idx < i.src.space->count(d); ++idx)
            corr[{d, idx}] = i.apply(SimplexId{d, idx}).base;
    std::map<SimplexId, SimplexId> corr_inv;
    for (const auto& [s, b] : corr) corr_inv[b] = s;

    for (const auto& [gidx, ch] : path) {
        const MarkedMap& gen = gen_maps[gidx];
        // attaching: U -> stage through B
        std::vector<std::vector<SimplexRef>> att(
            static_cast<size_t>(std::max(0, gen.src.space->dim())) + 1);
        for (int d = 0; d <= gen.src.space->dim(); ++d)
            for (int idx = 0; idx < gen.src.space->count(d); ++idx) {
                SimplexRef in_v = gen.apply(SimplexId{d, idx});
                SimplexRef in_b = in_v.word.empty()
                                      ? ch.v_images[static_cast<size_t>(in_v.base.dim)]
                                                   [static_cast<size_t>(in_v.base.idx)]
                                      : SimplicialMap(gen.tgt.space, B.space, ch.v_images)
                                            .apply(in_v);
                att[static_cast<size_t>(d)].push_back(
                    SimplexRef{corr_inv.at(in_b.base), in_b.word});
            }
        MarkedMap attaching{SimplicialMap(gen.src.space, stage.space, std::move(att)),
                            gen.src, stage};
        MarkedPushout po = marked_pushout(gen, attaching);

        // extend the correspondence over the appended cells (appended in the
        // dimension-major order of V off the generator image)
        std::set<SimplexId> u_image;
        for (int d = 0; d <= gen.src.space->dim(); ++d)
            for (int idx = 0; idx < gen.src.space->count(d); ++idx)
                u_image.insert(gen.apply(SimplexId{d, idx}).base);
        std::map<SimplexId, SimplexId> next_corr = corr;
        for (int d = 0; d <= gen.tgt.space->dim(); ++d) {
            int appended = stage.space->count(d);
            for (int idx = 0; idx < gen.tgt.space->count(d); ++idx) {
                if (u_image.count({d, idx})) continue;
                next_corr[{d, appended}] =
                    ch.v_images[static_cast<size_t>(d)][static_cast<size_t>(idx)].base;
                ++appended;
            }
        }
        cert.steps.push_back({gens[gidx], std::move(attaching)});
        stage = po.space;
        corr = std::move(next_corr);
        corr_inv.clear();
        for (const auto& [s, b] : corr) corr_inv[b] = s;
    }

    // identification from the tracked correspondence
    std::vector<std::vector<SimplexRef>> phi(
        static_cast<size_t>(std::max(0, stage.space->dim())) + 1);
    for (int d = 0; d <= stage.space->dim(); ++d)
        for (int idx = 0; idx < stage.space->count(d); ++idx)
            phi[static_cast<size_t>(d)].push_back(nondeg(corr.at({d, idx})));
    cert.identification =
        MarkedMap{SimplicialMap(stage.space, B.space, std::move(phi)), stage, B};

    CheckResult chk = check_certificate(cert, i);
    if (!chk.ok) throw MssetError("search_certificate: replay failed: " + chk.diagnostic);
    return cert;
}

AnodyneCertificate compose_certificates(const AnodyneCertificate& first,
                                        const MarkedMap& first_map,
                                        const AnodyneCertificate& second,
                                        const MarkedMap& second_map) {
    CheckResult c1 = check_certificate(first, first_map);
    if (!c1.ok) throw InvalidParameter("compose_certificates: first fails: " + c1.diagnostic);
    CheckResult c2 = check_certificate(second, second_map);
    if (!c2.ok) throw InvalidParameter("compose_certificates: second fails: " + c2.diagnostic);
    if (!same_marked(first_map.tgt, second.start))
        throw InvalidParameter("compose_certificates: endpoints do not match");

    AnodyneCertificate out;
    out.class_spec = first.class_spec;
    out.start = first.start;
    out.a2_depth = std::max(first.a2_depth, second.a2_depth);
    out.steps = first.steps;

    // recompute the identification the way the checker does
    SimplicialMap inclusion = SimplicialMap::identity(first.start.space);
    MarkedSSet st = first.start;
    for (const auto& step : first.steps) {
        MarkedPushout po = marked_pushout(generator(step.gen, first.a2_depth), step.attaching);
        inclusion = compose(po.from_x.map, inclusion);
        st = po.space;
    }
    std::map<SimplexId, SimplexId> forced;
    for (int d = 0; d <= first.start.space->dim(); ++d)
        for (int idx = 0; idx < first.start.space->count(d); ++idx)
            forced[inclusion.apply(SimplexId{d, idx}).base] =
                first_map.apply(SimplexId{d, idx}).base;
    MarkedMap phi1 = first.identification
                         ? *first.identification
                         : *marked_isomorphism(st, first_map.tgt, forced);
    MarkedMap psi = MarkedMap{inverse_of(phi1.map), phi1.tgt, phi1.src}; // B -> final1

    // transport the second certificate's attachings through psi, rebuilding
    // stages as we go
    MarkedSSet cur = st; // stage isomorphic to second's start via psi
    MarkedMap iso = psi; // second-stage -> our-stage, maintained per step
    for (const auto& step : second.steps) {
        MarkedMap gen = generator(step.gen, second.a2_depth);
        MarkedMap att{compose(iso.map, step.attaching.map), step.attaching.src, cur};
        MarkedPushout po_ours = marked_pushout(gen, att);
        MarkedPushout po_theirs = marked_pushout(gen, step.attaching);
        // the isomorphism extends by matching appended cells positionally
        std::vector<std::vector<SimplexRef>> ext(
            static_cast<size_t>(std::max(0, po_theirs.space.space->dim())) + 1);
        for (int d = 0; d <= po_theirs.space.space->dim(); ++d)
            for (int idx = 0; idx < po_theirs.space.space->count(d); ++idx) {
                if (idx < step.attaching.tgt.space->count(d)) {
                    ext[static_cast<size_t>(d)].push_back(iso.map.apply(SimplexId{d, idx}));
                } else {
                    int offset = idx - step.attaching.tgt.space->count(d);
                    ext[static_cast<size_t>(d)].push_back(
                        nondeg(d, cur.space->count(d) + offset));
                }
            }
        out.steps.push_back({step.gen, att});
        iso = MarkedMap{SimplicialMap(po_theirs.space.space, po_ours.space.space,
                                      std::move(ext)),
                        po_theirs.space, po_ours.space};
        cur = po_ours.space;
    }

    // identification: our final -> second final -> C
    SimplicialMap inclusion2 = SimplicialMap::identity(second.start.space);
    MarkedSSet st2 = second.start;
    for (const auto& step : second.steps) {
        MarkedPushout po = marked_pushout(generator(step.gen, second.a2_depth), step.attaching);
        inclusion2 = compose(po.from_x.map, inclusion2);
        st2 = po.space;
    }
    std::map<SimplexId, SimplexId> forced2;
    for (int d = 0; d <= second.start.space->dim(); ++d)
        for (int idx = 0; idx < second.start.space->count(d); ++idx)
            forced2[inclusion2.apply(SimplexId{d, idx}).base] =
                second_map.apply(SimplexId{d, idx}).base;
    MarkedMap phi2 = second.identification
                         ? *second.identification
                         : *marked_isomorphism(st2, second_map.tgt, forced2);
    MarkedMap iso_inv{inverse_of(iso.map), iso.tgt, iso.src};
    out.identification = MarkedMap{compose(phi2.map, iso_inv.map), cur, second_map.tgt};
    return out;
}

StabilityReport pullback_stability_check(const MarkedMap& i, const MarkedMap& q,
                                         FamilyClass class_in, FamilyClass class_out,
                                         const SearchBounds& bounds, FibKind q_kind,
                                         int cutoff,
                                         const std::optional<AnodyneCertificate>& input_cert) {
    StabilityReport rep;
    rep.fibration = is_fibration(q_kind, q, cutoff);
    if (!rep.fibration.verdict) {
        rep.verdict = StabilityVerdict::HypothesisFailure;
        rep.note = "the right leg failed its fibration check";
        return rep;
    }
    if (input_cert) {
        CheckResult chk = check_certificate(*input_cert, i);
        if (!chk.ok) {
            rep.verdict = StabilityVerdict::HypothesisFailure;
            rep.note = "supplied certificate rejected: " + chk.diagnostic;
            return rep;
        }
        rep.input_certificate = input_cert;
    } else {
        rep.input_certificate = search_certificate(i, class_in, bounds);
        if (!rep.input_certificate) {
            rep.verdict = StabilityVerdict::HypothesisFailure;
            rep.note = "no certificate found for the input map within bounds";
            return rep;
        }
    }

    MarkedPullback pb = marked_pullback(i, q);
    rep.comparison = pb.to_right; // j : A x_B Y -> Y
    rep.output_certificate = search_certificate(*rep.comparison, class_out, bounds);
    rep.verdict = rep.output_certificate ? StabilityVerdict::Pass
                                         : StabilityVerdict::UnknownWithinBounds;
    if (rep.verdict == StabilityVerdict::UnknownWithinBounds)
        rep.note = "no certificate for the pullback within bounds";
    return rep;
}

} // namespace msset
