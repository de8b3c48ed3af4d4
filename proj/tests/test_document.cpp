#include "doctest.h"

#include "msset/cli.hpp"
#include "msset/document.hpp"

#include <fstream>
#include <sstream>

using namespace msset;

namespace {

std::string roundtrip(const Document& d) {
    std::string s = serialize(d);
    Document back = parse_document(s);
    std::string t = serialize(back);
    CHECK(s == t);
    return s;
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = std::string("cli_") + name;
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("documents round trip canonically") {
    roundtrip(wrap(flat(standard_simplex(1)), true));
    roundtrip(wrap(sharp(boundary(2))));
    roundtrip(wrap(natural_marking(nerve(chain_poset(2)))));
    roundtrip(wrap(to_point(sharp(standard_simplex(1)))));
    roundtrip(wrap(generator({GenFamily::B2, 1})));
    roundtrip(wrap(chain_poset(2)));
    roundtrip(wrap(walking_iso_category()));
    roundtrip(wrap_report({"verdict pass", "note hello"}));

    // certificate round trip, checked after parsing
    auto g = generator({GenFamily::A1, 2, 1});
    auto cert = search_certificate(g, FamilyClass::MarkedLeft, {});
    REQUIRE(cert.has_value());
    std::string text = roundtrip(wrap(*cert));
    Document d = parse_document(text);
    CHECK(check_certificate(*d.certificate_v, g).ok);
}

TEST_CASE("functor documents round trip") {
    BaseProduct base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto pt = standard_simplex(0);
    MarkedOverBase X{sharp(pt),
                     MarkedMap{SimplicialMap::identity(pt), sharp(pt), base.b_plus}};
    auto F = atom_functor(base, 0, X);
    std::string s = roundtrip(wrap(F));
    Document d = parse_document(s);
    CHECK(d.functor_v->indexing->objects() == 2);
}

TEST_CASE("instance documents round trip") {
    TheoremInstance t;
    t.theorem = "ezproper";
    auto g = generator({GenFamily::B2p, 0});
    t.i = g;
    auto P = marked_product(g.tgt, natural_marking(nerve(chain_poset(1))));
    t.q = P.proj_left;
    roundtrip(wrap(t));

    TheoremInstance j;
    j.theorem = "joyalproperness";
    auto f = chain_poset(1);
    j.fibers = {f, f, f};
    j.steps = {cat_identity(f), cat_identity(f)};
    j.horn_k = 1;
    std::string s = roundtrip(wrap(j));
    Document d = parse_document(s);
    CHECK(d.instance_v->fibers.size() == 3);
    CHECK(d.instance_v->steps.size() == 2);
}

TEST_CASE("parse errors are position-tagged and name the offending row") {
    std::string bad = "msset 1 sset\ncounts 1 1\nfaces 1 0 : 0.3 0.0\nend\n";
    try {
        parse_document(bad);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }

    // missing image row
    std::string missing = "msset 1 map\n"
                          "begin source\ncounts 1\nend\n"
                          "begin target\ncounts 2 1\nfaces 1 0 : 0.1 0.0\nend\n"
                          "end\n";
    CHECK_THROWS_AS(parse_document(missing), ParseError);

    // marks outside the edge range
    std::string badmark = "msset 1 marked_sset\ncounts 2 1\nfaces 1 0 : 0.1 0.0\nmarked 3\nend\n";
    CHECK_THROWS_AS(parse_document(badmark), ParseError);

    CHECK_THROWS_AS(parse_document("msset 2 sset\ncounts 1\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_document("msset 1 nonsense\nend\n"), ParseError);
}

TEST_CASE("cli check-fibration exit codes") {
    auto NM = natural_marking(nerve(chain_poset(1)));
    auto path = write_temp("nm.map", serialize(wrap(to_point(NM))));
    CHECK(run_cli({"check-fibration", "--kind", "marked_left", "--cutoff", "4", path}) ==
          exit_pass);

    auto horn_path = write_temp("horn.map", serialize(wrap(generator({GenFamily::A1, 2, 1}))));
    CHECK(run_cli({"check-fibration", "--kind", "inner", "--cutoff", "3", horn_path}) ==
          exit_fail);

    CHECK(run_cli({"check-fibration", "--kind", "bogus", horn_path}) == exit_usage);
    CHECK(run_cli({"check-fibration", "--kind", "inner", "no-such-file.map"}) == exit_usage);

    auto bad = write_temp("bad.map", "msset 1 map\ntrash\nend\n");
    CHECK(run_cli({"check-fibration", "--kind", "inner", bad}) == exit_parse);
}

TEST_CASE("cli certify-anodyne emits certificates and unknowns") {
    auto path = write_temp("a1.map", serialize(wrap(generator({GenFamily::A1, 2, 1}))));
    std::string out;
    CHECK(run_cli({"certify-anodyne", "--class", "marked-left", path}, &out) == exit_pass);
    CHECK(out.find("certificate") != std::string::npos);

    // an inclusion that the cellular class cannot reach: starved bounds
    auto hard = write_temp("hard.map", serialize(wrap(to_point(sharp(standard_simplex(1))))));
    CHECK(run_cli({"certify-anodyne", "--class", "marked-left", hard}) == exit_usage);
}

TEST_CASE("cli verify-theorem with starved bounds reports unknown") {
    TheoremInstance t;
    t.theorem = "ezproper";
    auto g = generator({GenFamily::B2p, 1});
    t.i = g;
    auto P = marked_product(g.tgt, natural_marking(nerve(chain_poset(1))));
    t.q = P.proj_left;
    t.bounds.max_steps = 0; // starved
    t.bounds.max_param = 0;
    auto path = write_temp("starved.instance", serialize(wrap(t)));
    CHECK(run_cli({"verify-theorem", "--name", "ezproper", path}) == exit_unknown);

    t.bounds = {};
    auto path2 = write_temp("ok.instance", serialize(wrap(t)));
    CHECK(run_cli({"verify-theorem", path2}) == exit_pass);
}

TEST_CASE("cli solve-lift") {
    TheoremInstance t;
    t.theorem = "lifting";
    auto gen = generator({GenFamily::A1, 2, 1});
    auto N = nerve(chain_poset(2));
    auto right = to_point(flat(N.space));
    auto tops = enumerate_marked_maps(gen.src, right.src);
    REQUIRE(!tops.empty());
    t.i = gen;
    t.q = right;
    t.top = tops.front();
    t.bottom = MarkedMap{SimplicialMap::constant(gen.tgt.space, right.tgt.space,
                                                 SimplexId{0, 0}),
                         gen.tgt, right.tgt};
    auto path = write_temp("lift.instance", serialize(wrap(t)));
    std::string out;
    CHECK(run_cli({"solve-lift", path}, &out) == exit_pass);
    CHECK(out.find("msset 1 map") != std::string::npos);
}

TEST_CASE("cli run-suite is byte-deterministic") {
    std::string a, b;
    CHECK(run_cli({"run-suite", "--name", "generators", "--seed", "3", "--count", "4"}, &a) ==
          exit_pass);
    CHECK(run_cli({"run-suite", "--name", "generators", "--seed", "3", "--count", "4"}, &b) ==
          exit_pass);
    CHECK(a == b);
    CHECK(run_cli({"run-suite", "--name", "nope"}) == exit_usage);
}

TEST_CASE("json rendering carries the same payload") {
    auto d = wrap_report({"verdict pass"});
    std::string j = to_json_text(d);
    CHECK(j.find("\"kind\": \"report\"") != std::string::npos);
    CHECK(j.find("verdict pass") != std::string::npos);
}

TEST_CASE("MSSET_CUTOFF selects the default cutoff") {
    auto NM = natural_marking(nerve(chain_poset(1)));
    auto path = write_temp("env.map", serialize(wrap(to_point(NM))));
    setenv("MSSET_CUTOFF", "3", 1);
    std::string out;
    CHECK(run_cli({"check-fibration", "--kind", "marked_left", path}, &out) == exit_pass);
    CHECK(out.find("cutoff 3") != std::string::npos);
    setenv("MSSET_CUTOFF", "not-a-number", 1);
    CHECK(run_cli({"check-fibration", "--kind", "marked_left", path}) == exit_usage);
    unsetenv("MSSET_CUTOFF");
}
