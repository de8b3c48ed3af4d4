#include "msset/document.hpp"

#include "json.hpp"

#include <sstream>

namespace msset {

namespace {

// ---- writer ----

struct Writer {
    std::ostringstream out;
    int indent = 0;
    void line(const std::string& s) {
        for (int i = 0; i < indent; ++i) out << "  ";
        out << s << "\n";
    }
};

std::string ref_str(const SimplexRef& r) {
    std::string s = std::to_string(r.base.dim) + "." + std::to_string(r.base.idx);
    if (!r.word.empty()) {
        s += "[";
        for (size_t i = 0; i < r.word.size(); ++i) {
            if (i) s += " ";
            s += std::to_string(r.word[i]);
        }
        s += "]";
    }
    return s;
}

void write_marked_sset(Writer& w, const MarkedSSet& m, bool plain) {
    const SSetPtr& X = m.space;
    std::string counts;
    for (int d = 0; d <= X->dim(); ++d) {
        if (d) counts += " ";
        counts += std::to_string(X->count(d));
    }
    w.line("counts " + (X->dim() < 0 ? std::string("-") : counts));
    for (int d = 1; d <= X->dim(); ++d)
        for (int idx = 0; idx < X->count(d); ++idx) {
            std::string s = "faces " + std::to_string(d) + " " + std::to_string(idx) + " :";
            for (const auto& f : X->faces_of({d, idx})) s += " " + ref_str(f);
            w.line(s);
        }
    if (!plain && !m.marks.empty()) {
        std::string s = "marked";
        for (int e : m.marks) s += " " + std::to_string(e);
        w.line(s);
    }
    if (m.j_depth >= 0) w.line("jdepth " + std::to_string(m.j_depth));
}

void write_map(Writer& w, const MarkedMap& f) {
    w.line("begin source");
    w.indent++;
    write_marked_sset(w, f.src, false);
    w.indent--;
    w.line("end");
    w.line("begin target");
    w.indent++;
    write_marked_sset(w, f.tgt, false);
    w.indent--;
    w.line("end");
    const SSetPtr& X = f.src.space;
    for (int d = 0; d <= X->dim(); ++d)
        for (int idx = 0; idx < X->count(d); ++idx)
            w.line("image " + std::to_string(d) + " " + std::to_string(idx) + " : " +
                   ref_str(f.apply(SimplexId{d, idx})));
}

void write_category(Writer& w, const CatPtr& C) {
    w.line("objects " + std::to_string(C->objects()));
    for (int a = 0; a < C->arrow_count(); ++a) {
        if (C->is_identity(a)) continue;
        w.line("arrow " + std::to_string(a) + " : " + std::to_string(C->arrow(a).src) +
               " -> " + std::to_string(C->arrow(a).dst));
    }
    for (int f = 0; f < C->arrow_count(); ++f)
        for (int g = 0; g < C->arrow_count(); ++g) {
            if (!C->composable(g, f) || C->is_identity(f) || C->is_identity(g)) continue;
            w.line("compose " + std::to_string(g) + " " + std::to_string(f) + " = " +
                   std::to_string(C->compose(g, f)));
        }
}

void write_functor(Writer& w, const FunctorToMarkedOverB& F) {
    w.line("begin indexing");
    w.indent++;
    write_category(w, F.indexing);
    w.indent--;
    w.line("end");
    w.line("begin base");
    w.indent++;
    write_marked_sset(w, F.base, false);
    w.indent--;
    w.line("end");
    for (size_t a = 0; a < F.values.size(); ++a) {
        w.line("begin value " + std::to_string(a));
        w.indent++;
        write_marked_sset(w, F.values[a].total, false);
        w.indent--;
        w.line("end");
        const SSetPtr& X = F.values[a].total.space;
        for (int d = 0; d <= X->dim(); ++d)
            for (int idx = 0; idx < X->count(d); ++idx)
                w.line("struct " + std::to_string(a) + " " + std::to_string(d) + " " +
                       std::to_string(idx) + " : " +
                       ref_str(F.values[a].structure.apply(SimplexId{d, idx})));
    }
    for (size_t f = 0; f < F.arrows.size(); ++f) {
        const SSetPtr& X = F.arrows[f].src.space;
        for (int d = 0; d <= X->dim(); ++d)
            for (int idx = 0; idx < X->count(d); ++idx)
                w.line("arrow " + std::to_string(f) + " " + std::to_string(d) + " " +
                       std::to_string(idx) + " : " +
                       ref_str(F.arrows[f].apply(SimplexId{d, idx})));
    }
}

void write_certificate(Writer& w, const AnodyneCertificate& c) {
    w.line("class " + to_string(c.class_spec));
    w.line("a2depth " + std::to_string(c.a2_depth));
    w.line("begin start");
    w.indent++;
    write_marked_sset(w, c.start, false);
    w.indent--;
    w.line("end");
    for (size_t t = 0; t < c.steps.size(); ++t) {
        const auto& s = c.steps[t];
        w.line("begin step " + std::to_string(t));
        w.indent++;
        w.line("generator " + to_string(s.gen.family) + " " + std::to_string(s.gen.n) + " " +
               std::to_string(s.gen.k));
        w.line("begin attaching");
        w.indent++;
        write_map(w, s.attaching);
        w.indent--;
        w.line("end");
        w.indent--;
        w.line("end");
    }
    if (c.identification) {
        w.line("begin identification");
        w.indent++;
        write_map(w, *c.identification);
        w.indent--;
        w.line("end");
    }
}

void write_instance(Writer& w, const TheoremInstance& t) {
    w.line("theorem " + t.theorem);
    w.line("bounds " + std::to_string(t.bounds.max_steps) + " " +
           std::to_string(t.bounds.max_param) + " " + std::to_string(t.bounds.cutoff) + " " +
           std::to_string(t.bounds.depth));
    auto block = [&](const std::string& name, const MarkedMap& m) {
        w.line("begin " + name);
        w.indent++;
        write_map(w, m);
        w.indent--;
        w.line("end");
    };
    if (t.i) block("i", *t.i);
    if (t.q) block("q", *t.q);
    if (t.top) block("top", *t.top);
    if (t.bottom) block("bottom", *t.bottom);
    if (t.A) {
        w.line("begin A");
        w.indent++;
        write_category(w, t.A);
        w.indent--;
        w.line("end");
    }
    if (t.b_plus) {
        w.line("begin B");
        w.indent++;
        write_marked_sset(w, *t.b_plus, false);
        w.indent--;
        w.line("end");
    }
    if (t.W) block("W", t.W->structure);
    if (t.X) block("X", t.X->structure);
    if (t.p) block("p", *t.p);
    w.line("obj_a " + std::to_string(t.obj_a));
    w.line("horn_k " + std::to_string(t.horn_k));
    for (size_t i = 0; i < t.fibers.size(); ++i) {
        w.line("begin fiber " + std::to_string(i));
        w.indent++;
        write_category(w, t.fibers[i]);
        w.indent--;
        w.line("end");
    }
    for (size_t i = 0; i < t.steps.size(); ++i) {
        w.line("begin cstep " + std::to_string(i));
        w.indent++;
        std::string om = "objmap";
        for (int o : t.steps[i].obj_map) om += " " + std::to_string(o);
        w.line(om);
        std::string am = "arrowmap";
        for (int a : t.steps[i].arrow_map) am += " " + std::to_string(a);
        w.line(am);
        w.indent--;
        w.line("end");
    }
}

// ---- reader ----

struct Reader {
    std::vector<std::string> lines;
    std::vector<std::vector<std::string>> tokens;
    size_t pos = 0;

    explicit Reader(const std::string& text) {
        std::istringstream in(text);
        std::string l;
        while (std::getline(in, l)) {
            lines.push_back(l);
            std::istringstream ls(l);
            std::vector<std::string> ts;
            std::string t;
            while (ls >> t) ts.push_back(t);
            tokens.push_back(ts);
        }
    }
    bool done() const { return pos >= tokens.size(); }
    int lineno() const { return static_cast<int>(pos) + 1; }
    const std::vector<std::string>& peek() {
        while (!done() && (tokens[pos].empty() || tokens[pos][0].front() == '#')) ++pos;
        if (done()) throw ParseError(lineno(), "unexpected end of document");
        return tokens[pos];
    }
    std::vector<std::string> next() {
        auto t = peek();
        ++pos;
        return t;
    }
    bool peek_is(const std::string& head) {
        while (!done() && (tokens[pos].empty() || tokens[pos][0].front() == '#')) ++pos;
        return !done() && !tokens[pos].empty() && tokens[pos][0] == head;
    }
    void expect(const std::string& head) {
        auto t = next();
        if (t.empty() || t[0] != head)
            throw ParseError(lineno(), "expected '" + head + "'");
    }
};

int to_int(const Reader& r, const std::string& s) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ParseError(r.lineno(), "not an integer: '" + s + "'");
    }
}

SimplexRef parse_ref(Reader& r, const std::string& tok, const std::string& rest) {
    // forms: d.i  or  d.i[w w ...] where the bracket part may span tokens
    std::string s = tok + rest;
    auto dot = s.find('.');
    if (dot == std::string::npos) throw ParseError(r.lineno(), "bad simplex reference '" + s + "'");
    SimplexRef out;
    out.base.dim = to_int(r, s.substr(0, dot));
    auto br = s.find('[');
    if (br == std::string::npos) {
        out.base.idx = to_int(r, s.substr(dot + 1));
        return out;
    }
    out.base.idx = to_int(r, s.substr(dot + 1, br - dot - 1));
    auto close = s.find(']');
    if (close == std::string::npos) throw ParseError(r.lineno(), "unterminated degeneracy word");
    std::istringstream ws(s.substr(br + 1, close - br - 1));
    std::string t;
    while (ws >> t) out.word.push_back(to_int(r, t));
    return out;
}

std::vector<SimplexRef> parse_refs(Reader& r, const std::vector<std::string>& toks, size_t from) {
    // joins tokens so that words split by spaces inside brackets reassemble
    std::vector<SimplexRef> out;
    std::string cur;
    int depth = 0;
    for (size_t i = from; i < toks.size(); ++i) {
        for (char c : toks[i]) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
        }
        cur += (cur.empty() ? "" : " ") + toks[i];
        if (depth == 0) {
            out.push_back(parse_ref(r, cur, ""));
            cur.clear();
        }
    }
    if (depth != 0) throw ParseError(r.lineno(), "unterminated degeneracy word");
    return out;
}

MarkedSSet parse_marked_sset(Reader& r) {
    std::vector<int> counts;
    {
        auto t = r.next();
        if (t.empty() || t[0] != "counts") throw ParseError(r.lineno(), "expected 'counts'");
        for (size_t i = 1; i < t.size(); ++i)
            if (t[i] != "-") counts.push_back(to_int(r, t[i]));
    }
    std::vector<std::vector<std::vector<SimplexRef>>> faces(counts.size());
    std::set<int> marks;
    int jdepth = -1;
    for (int d = 1; d < static_cast<int>(counts.size()); ++d)
        faces[static_cast<size_t>(d)].resize(static_cast<size_t>(counts[static_cast<size_t>(d)]));
    while (!r.done()) {
        if (r.peek_is("faces")) {
            auto t = r.next();
            if (t.size() < 4 || t[3] != ":") throw ParseError(r.lineno(), "bad faces line");
            int d = to_int(r, t[1]);
            int idx = to_int(r, t[2]);
            if (d < 1 || d >= static_cast<int>(counts.size()) || idx < 0 ||
                idx >= counts[static_cast<size_t>(d)])
                throw ParseError(r.lineno(), "faces row out of range");
            auto refs = parse_refs(r, t, 4);
            if (static_cast<int>(refs.size()) != d + 1)
                throw ParseError(r.lineno(), "faces row needs d+1 entries");
            faces[static_cast<size_t>(d)][static_cast<size_t>(idx)] = refs;
        } else if (r.peek_is("marked")) {
            auto t = r.next();
            for (size_t i = 1; i < t.size(); ++i) marks.insert(to_int(r, t[i]));
        } else if (r.peek_is("jdepth")) {
            auto t = r.next();
            jdepth = to_int(r, t.at(1));
        } else {
            break;
        }
    }
    int first_bad_line = 0;
    try {
        auto space = std::make_shared<SimplicialSet>(counts, faces);
        space->validate();
        MarkedSSet out{space, marks, jdepth};
        for (int e : marks)
            if (e < 0 || e >= space->count(1))
                throw InvalidParameter("marked edge out of range");
        return out;
    } catch (const InvalidParameter& e) {
        throw ParseError(first_bad_line ? first_bad_line : static_cast<int>(r.pos),
                         std::string("invalid presentation: ") + e.what());
    }
}

MarkedSSet parse_block_marked(Reader& r, const std::string& name) {
    r.expect("begin");
    --r.pos;
    auto t = r.next();
    if (t.size() < 2 || t[1] != name)
        throw ParseError(r.lineno(), "expected 'begin " + name + "'");
    MarkedSSet m = parse_marked_sset(r);
    r.expect("end");
    return m;
}

MarkedMap parse_map_body(Reader& r) {
    MarkedSSet src = parse_block_marked(r, "source");
    MarkedSSet tgt = parse_block_marked(r, "target");
    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, src.space->dim())) + 1);
    for (int d = 0; d <= src.space->dim(); ++d)
        images[static_cast<size_t>(d)].resize(static_cast<size_t>(src.space->count(d)));
    std::vector<std::vector<char>> seen(images.size());
    for (int d = 0; d <= src.space->dim(); ++d)
        seen[static_cast<size_t>(d)].assign(static_cast<size_t>(src.space->count(d)), 0);
    while (r.peek_is("image")) {
        auto t = r.next();
        if (t.size() < 5 || t[3] != ":") throw ParseError(r.lineno(), "bad image line");
        int d = to_int(r, t[1]);
        int idx = to_int(r, t[2]);
        if (d < 0 || d > src.space->dim() || idx < 0 || idx >= src.space->count(d))
            throw ParseError(r.lineno(), "image row out of range");
        auto refs = parse_refs(r, t, 4);
        if (refs.size() != 1) throw ParseError(r.lineno(), "image row needs one reference");
        images[static_cast<size_t>(d)][static_cast<size_t>(idx)] = refs[0];
        seen[static_cast<size_t>(d)][static_cast<size_t>(idx)] = 1;
    }
    for (int d = 0; d <= src.space->dim(); ++d)
        for (int idx = 0; idx < src.space->count(d); ++idx)
            if (!seen[static_cast<size_t>(d)][static_cast<size_t>(idx)])
                throw ParseError(r.lineno(), "missing image for simplex " + std::to_string(d) +
                                                 "." + std::to_string(idx));
    MarkedMap out{SimplicialMap(src.space, tgt.space, std::move(images)), src, tgt};
    try {
        out.validate();
    } catch (const InvalidParameter& e) {
        throw ParseError(r.lineno(), std::string("invalid map: ") + e.what());
    }
    return out;
}

CatPtr parse_category_body(Reader& r) {
    auto t = r.next();
    if (t.size() != 2 || t[0] != "objects") throw ParseError(r.lineno(), "expected 'objects N'");
    int n = to_int(r, t[1]);
    CatBuilder b(n);
    std::map<int, int> id_map; // document arrow id -> builder id
    for (int o = 0; o < n; ++o) id_map[o] = o;
    std::vector<std::tuple<int, int, int>> pending;
    while (!r.done()) {
        if (r.peek_is("arrow")) {
            auto a = r.next();
            if (a.size() != 6 || a[2] != ":" || a[4] != "->")
                throw ParseError(r.lineno(), "bad arrow line");
            int src = to_int(r, a[3]);
            int dst = to_int(r, a[5]);
            id_map[to_int(r, a[1])] = b.add_arrow(src, dst, "a" + a[1]);
        } else if (r.peek_is("compose")) {
            auto c = r.next();
            if (c.size() != 5 || c[3] != "=") throw ParseError(r.lineno(), "bad compose line");
            pending.emplace_back(to_int(r, c[1]), to_int(r, c[2]), to_int(r, c[4]));
        } else {
            break;
        }
    }
    for (auto [g, f, gf] : pending) {
        if (!id_map.count(g) || !id_map.count(f) || !id_map.count(gf))
            throw ParseError(r.lineno(), "compose line references unknown arrow");
        b.set_composite(id_map[g], id_map[f], id_map[gf]);
    }
    try {
        return b.build();
    } catch (const InvalidParameter& e) {
        throw ParseError(r.lineno(), std::string("invalid category: ") + e.what());
    }
}

FunctorToMarkedOverB parse_functor_body(Reader& r) {
    FunctorToMarkedOverB F;
    r.expect("begin");
    --r.pos;
    {
        auto t = r.next();
        if (t.size() < 2 || t[1] != "indexing")
            throw ParseError(r.lineno(), "expected 'begin indexing'");
        F.indexing = parse_category_body(r);
        r.expect("end");
    }
    F.base = parse_block_marked(r, "base");

    std::vector<MarkedSSet> totals;
    std::vector<std::vector<std::vector<SimplexRef>>> structs;
    std::vector<std::vector<std::vector<SimplexRef>>> arrow_images(
        static_cast<size_t>(F.indexing->arrow_count()));
    while (!r.done()) {
        if (r.peek_is("begin")) {
            auto t = r.next();
            if (t.size() >= 3 && t[1] == "value") {
                if (to_int(r, t[2]) != static_cast<int>(totals.size()))
                    throw ParseError(r.lineno(), "values must appear in order");
                totals.push_back(parse_marked_sset(r));
                structs.emplace_back(
                    static_cast<size_t>(std::max(0, totals.back().space->dim())) + 1);
                for (int d = 0; d <= totals.back().space->dim(); ++d)
                    structs.back()[static_cast<size_t>(d)].resize(
                        static_cast<size_t>(totals.back().space->count(d)));
                r.expect("end");
            } else {
                throw ParseError(r.lineno(), "unexpected block in functor");
            }
        } else if (r.peek_is("struct")) {
            auto t = r.next();
            if (t.size() < 6 || t[4] != ":") throw ParseError(r.lineno(), "bad struct line");
            int a = to_int(r, t[1]);
            int d = to_int(r, t[2]);
            int idx = to_int(r, t[3]);
            if (a < 0 || a >= static_cast<int>(structs.size()))
                throw ParseError(r.lineno(), "struct row before its value");
            structs[static_cast<size_t>(a)][static_cast<size_t>(d)][static_cast<size_t>(idx)] =
                parse_refs(r, t, 5).at(0);
        } else if (r.peek_is("arrow")) {
            auto t = r.next();
            if (t.size() < 6 || t[4] != ":") throw ParseError(r.lineno(), "bad arrow line");
            int f = to_int(r, t[1]);
            int d = to_int(r, t[2]);
            int idx = to_int(r, t[3]);
            if (f < 0 || f >= F.indexing->arrow_count())
                throw ParseError(r.lineno(), "arrow row out of range");
            auto& tbl = arrow_images[static_cast<size_t>(f)];
            if (tbl.size() <= static_cast<size_t>(d)) tbl.resize(static_cast<size_t>(d) + 1);
            if (tbl[static_cast<size_t>(d)].size() <= static_cast<size_t>(idx))
                tbl[static_cast<size_t>(d)].resize(static_cast<size_t>(idx) + 1);
            tbl[static_cast<size_t>(d)][static_cast<size_t>(idx)] = parse_refs(r, t, 5).at(0);
        } else {
            break;
        }
    }
    if (static_cast<int>(totals.size()) != F.indexing->objects())
        throw ParseError(r.lineno(), "one value per object required");
    for (size_t a = 0; a < totals.size(); ++a)
        F.values.push_back(MarkedOverBase{
            totals[a], MarkedMap{SimplicialMap(totals[a].space, F.base.space,
                                               structs[a]),
                                 totals[a], F.base}});
    for (int f = 0; f < F.indexing->arrow_count(); ++f) {
        int s = F.indexing->arrow(f).src;
        int d = F.indexing->arrow(f).dst;
        auto& tbl = arrow_images[static_cast<size_t>(f)];
        tbl.resize(static_cast<size_t>(std::max(0, totals[static_cast<size_t>(s)].space->dim())) + 1);
        F.arrows.push_back(MarkedMap{
            SimplicialMap(totals[static_cast<size_t>(s)].space,
                          totals[static_cast<size_t>(d)].space, tbl),
            totals[static_cast<size_t>(s)], totals[static_cast<size_t>(d)]});
    }
    try {
        F.validate();
    } catch (const InvalidParameter& e) {
        throw ParseError(r.lineno(), std::string("invalid functor: ") + e.what());
    }
    return F;
}

AnodyneCertificate parse_certificate_body(Reader& r) {
    AnodyneCertificate c;
    {
        auto t = r.next();
        if (t.size() != 2 || t[0] != "class") throw ParseError(r.lineno(), "expected 'class'");
        auto f = family_from_string(t[1]);
        if (!f) throw ParseError(r.lineno(), "unknown class '" + t[1] + "'");
        c.class_spec = *f;
    }
    if (r.peek_is("a2depth")) c.a2_depth = to_int(r, r.next().at(1));
    c.start = parse_block_marked(r, "start");
    while (r.peek_is("begin")) {
        auto t = r.next();
        if (t.size() >= 2 && t[1] == "step") {
            CellStep step{{}, MarkedMap{}};
            auto g = r.next();
            if (g.size() != 4 || g[0] != "generator")
                throw ParseError(r.lineno(), "expected 'generator'");
            GeneratorInstance gi;
            bool found = false;
            for (GenFamily fam :
                 {GenFamily::A1, GenFamily::A2, GenFamily::B1, GenFamily::B2, GenFamily::B1p,
                  GenFamily::B2p, GenFamily::InnerHorn, GenFamily::LeftHorn,
                  GenFamily::RightHorn, GenFamily::Boundary, GenFamily::MarkEdge})
                if (to_string(fam) == g[1]) {
                    gi.family = fam;
                    found = true;
                }
            if (!found) throw ParseError(r.lineno(), "unknown generator family '" + g[1] + "'");
            gi.n = to_int(r, g[2]);
            gi.k = to_int(r, g[3]);
            step.gen = gi;
            {
                auto b = r.next();
                if (b.size() < 2 || b[0] != "begin" || b[1] != "attaching")
                    throw ParseError(r.lineno(), "expected 'begin attaching'");
                step.attaching = parse_map_body(r);
                r.expect("end");
            }
            r.expect("end");
            c.steps.push_back(std::move(step));
        } else if (t.size() >= 2 && t[1] == "identification") {
            c.identification = parse_map_body(r);
            r.expect("end");
        } else {
            throw ParseError(r.lineno(), "unexpected block in certificate");
        }
    }
    return c;
}

TheoremInstance parse_instance_body(Reader& r) {
    TheoremInstance t;
    {
        auto l = r.next();
        if (l.size() != 2 || l[0] != "theorem") throw ParseError(r.lineno(), "expected 'theorem'");
        t.theorem = l[1];
    }
    if (r.peek_is("bounds")) {
        auto l = r.next();
        if (l.size() != 5) throw ParseError(r.lineno(), "bounds needs four integers");
        t.bounds.max_steps = to_int(r, l[1]);
        t.bounds.max_param = to_int(r, l[2]);
        t.bounds.cutoff = to_int(r, l[3]);
        t.bounds.depth = to_int(r, l[4]);
    }
    std::optional<MarkedSSet> bp;
    while (!r.done()) {
        if (r.peek_is("begin")) {
            auto l = r.next();
            if (l.size() < 2) throw ParseError(r.lineno(), "bad block");
            const std::string& name = l[1];
            if (name == "i" || name == "q" || name == "top" || name == "bottom" ||
                name == "W" || name == "X" || name == "p") {
                MarkedMap m = parse_map_body(r);
                r.expect("end");
                if (name == "i") t.i = m;
                else if (name == "q") t.q = m;
                else if (name == "top") t.top = m;
                else if (name == "bottom") t.bottom = m;
                else if (name == "p") t.p = m;
                else if (name == "W") t.W = MarkedOverBase{m.src, m};
                else t.X = MarkedOverBase{m.src, m};
            } else if (name == "A") {
                t.A = parse_category_body(r);
                r.expect("end");
            } else if (name == "B") {
                bp = parse_marked_sset(r);
                r.expect("end");
            } else if (name == "fiber") {
                t.fibers.push_back(parse_category_body(r));
                r.expect("end");
            } else if (name == "cstep") {
                CatFunctor F;
                auto om = r.next();
                if (om.empty() || om[0] != "objmap") throw ParseError(r.lineno(), "expected objmap");
                for (size_t i = 1; i < om.size(); ++i) F.obj_map.push_back(to_int(r, om[i]));
                auto am = r.next();
                if (am.empty() || am[0] != "arrowmap")
                    throw ParseError(r.lineno(), "expected arrowmap");
                for (size_t i = 1; i < am.size(); ++i) F.arrow_map.push_back(to_int(r, am[i]));
                size_t k = t.steps.size();
                if (t.fibers.size() < k + 2)
                    throw ParseError(r.lineno(), "cstep before its fibers");
                F.src = t.fibers[k];
                F.tgt = t.fibers[k + 1];
                try {
                    F.validate();
                } catch (const InvalidParameter& e) {
                    throw ParseError(r.lineno(), std::string("invalid step functor: ") + e.what());
                }
                t.steps.push_back(std::move(F));
                r.expect("end");
            } else {
                throw ParseError(r.lineno(), "unknown block '" + name + "'");
            }
        } else if (r.peek_is("obj_a")) {
            t.obj_a = to_int(r, r.next().at(1));
        } else if (r.peek_is("horn_k")) {
            t.horn_k = to_int(r, r.next().at(1));
        } else {
            break;
        }
    }
    t.b_plus = bp;
    return t;
}

} // namespace

Document parse_document(const std::string& text) {
    Reader r(text);
    auto head = r.next();
    if (head.size() < 3 || head[0] != "msset")
        throw ParseError(r.lineno(), "expected header 'msset <version> <kind>'");
    Document d;
    d.format_version = to_int(r, head[1]);
    if (d.format_version != 1) throw ParseError(r.lineno(), "unsupported format version");
    d.kind = head[2];
    if (d.kind == "sset" || d.kind == "marked_sset") {
        d.marked_sset_v = parse_marked_sset(r);
        if (d.kind == "sset" && !d.marked_sset_v->marks.empty())
            throw ParseError(r.lineno(), "plain sset documents cannot carry marks");
    } else if (d.kind == "map") {
        d.map_v = parse_map_body(r);
    } else if (d.kind == "category") {
        d.category_v = parse_category_body(r);
    } else if (d.kind == "functor") {
        d.functor_v = parse_functor_body(r);
    } else if (d.kind == "certificate") {
        d.certificate_v = parse_certificate_body(r);
    } else if (d.kind == "instance") {
        d.instance_v = parse_instance_body(r);
    } else if (d.kind == "report") {
        while (!r.done() && !r.peek_is("end")) {
            std::string l;
            for (size_t i = 0; i < r.tokens[r.pos].size(); ++i) {
                if (i) l += " ";
                l += r.tokens[r.pos][i];
            }
            d.report_v.push_back(l);
            ++r.pos;
        }
        return d;
    } else {
        throw ParseError(r.lineno(), "unknown document kind '" + d.kind + "'");
    }
    if (!r.done() && r.peek_is("end")) r.next();
    return d;
}

std::string serialize(const Document& d) {
    Writer w;
    w.line("msset " + std::to_string(d.format_version) + " " + d.kind);
    if (d.kind == "sset" || d.kind == "marked_sset")
        write_marked_sset(w, *d.marked_sset_v, d.kind == "sset");
    else if (d.kind == "map")
        write_map(w, *d.map_v);
    else if (d.kind == "category")
        write_category(w, d.category_v);
    else if (d.kind == "functor")
        write_functor(w, *d.functor_v);
    else if (d.kind == "certificate")
        write_certificate(w, *d.certificate_v);
    else if (d.kind == "instance")
        write_instance(w, *d.instance_v);
    else if (d.kind == "report")
        for (const auto& l : d.report_v) w.line(l);
    else
        throw InvalidParameter("serialize: unknown kind");
    w.line("end");
    return w.out.str();
}

Document wrap(MarkedSSet m, bool as_plain_sset) {
    Document d;
    d.kind = as_plain_sset ? "sset" : "marked_sset";
    d.marked_sset_v = std::move(m);
    return d;
}
Document wrap(MarkedMap m) {
    Document d;
    d.kind = "map";
    d.map_v = std::move(m);
    return d;
}
Document wrap(CatPtr c) {
    Document d;
    d.kind = "category";
    d.category_v = std::move(c);
    return d;
}
Document wrap(FunctorToMarkedOverB f) {
    Document d;
    d.kind = "functor";
    d.functor_v = std::move(f);
    return d;
}
Document wrap(AnodyneCertificate c) {
    Document d;
    d.kind = "certificate";
    d.certificate_v = std::move(c);
    return d;
}
Document wrap(TheoremInstance t) {
    Document d;
    d.kind = "instance";
    d.instance_v = std::move(t);
    return d;
}
Document wrap_report(std::vector<std::string> lines) {
    Document d;
    d.kind = "report";
    d.report_v = std::move(lines);
    return d;
}

std::string to_json_text(const Document& d) {
    nlohmann::json j;
    j["format_version"] = d.format_version;
    j["kind"] = d.kind;
    if (d.kind == "report") {
        j["lines"] = d.report_v;
    } else {
        // canonical text payload embedded; machine consumers keep structure
        // via the line protocol
        std::istringstream in(serialize(d));
        std::vector<std::string> lines;
        std::string l;
        while (std::getline(in, l)) lines.push_back(l);
        j["lines"] = lines;
    }
    return j.dump(2) + "\n";
}

std::vector<std::string> render_report(const FibrationReport& r) {
    std::vector<std::string> out;
    out.push_back(std::string("verdict ") + (r.verdict ? "pass" : "fail"));
    out.push_back("cutoff " + std::to_string(r.cutoff));
    if (r.a2_depth >= 0) out.push_back("a2-depth " + std::to_string(r.a2_depth));
    for (const auto& [k, v] : r.checked_counts)
        out.push_back("squares " + k + " " + std::to_string(v));
    if (r.counterexample) out.push_back("counterexample recorded");
    return out;
}

std::vector<std::string> render_report(const InstanceReport& r) {
    std::vector<std::string> out;
    out.push_back("theorem " + r.theorem);
    out.push_back("verdict " + to_string(r.verdict));
    out.push_back("surrogate " + r.surrogate);
    for (const auto& l : r.lines) out.push_back("note " + l);
    return out;
}

std::vector<std::string> render_report(const SuiteReport& r) {
    std::vector<std::string> out;
    out.push_back("suite " + r.name);
    out.push_back("seed " + std::to_string(r.seed));
    out.push_back("count " + std::to_string(r.requested));
    out.push_back("passes " + std::to_string(r.passes));
    out.push_back("fails " + std::to_string(r.fails));
    out.push_back("unknowns " + std::to_string(r.unknowns));
    for (size_t i = 0; i < r.instances.size(); ++i) {
        out.push_back("instance " + std::to_string(i) + " " +
                      to_string(r.instances[i].verdict));
        for (const auto& l : r.instances[i].lines)
            out.push_back("  " + l);
    }
    return out;
}

std::vector<std::string> render_report(const CheckResult& r) {
    std::vector<std::string> out;
    out.push_back(std::string("verdict ") + (r.ok ? "pass" : "fail"));
    if (!r.diagnostic.empty()) out.push_back("diagnostic " + r.diagnostic);
    return out;
}

} // namespace msset
