#include "msset/cli.hpp"

#include "msset/document.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace msset {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(std::ostream& out, const Document& d, bool json) {
    out << (json ? to_json_text(d) : serialize(d));
}

void emit_report(std::ostream& out, std::vector<std::string> lines, bool json) {
    emit(out, wrap_report(std::move(lines)), json);
}

int default_cutoff() {
    if (const char* env = std::getenv("MSSET_CUTOFF")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw InvalidParameter("MSSET_CUTOFF must be an integer");
        }
    }
    return -1;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite marked simplicial sets: fibration checks, anodyne "
                 "certificates, straightening"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    std::string kind_str = "marked_left", file, cls_str = "marked-left", name, suite;
    constexpr int cutoff_unset = -1000000;
    int cutoff = cutoff_unset;
    int max_steps = 6, max_param = 3, depth = 4;
    std::uint64_t seed = 1;
    int count = 10;

    auto* fib = app.add_subcommand("check-fibration", "right lifting property of a map");
    fib->add_option("--kind", kind_str, "inner|left|right|marked_left|marked_right|trivial|marked_trivial");
    fib->add_option("--cutoff", cutoff, "generator parameter bound");
    fib->add_option("file", file, "map document")->required();

    auto* lift = app.add_subcommand("solve-lift", "solve one lifting problem");
    lift->add_option("file", file, "instance document with i, q, top, bottom")->required();

    auto* cert = app.add_subcommand("certify-anodyne", "search a relative cell certificate");
    cert->add_option("--class", cls_str, "generator class");
    cert->add_option("--max-steps", max_steps, "search step bound");
    cert->add_option("--max-param", max_param, "generator parameter bound");
    cert->add_option("file", file, "map document")->required();

    auto* str = app.add_subcommand("straighten", "left adjoint on a functor document");
    str->add_option("file", file, "functor document")->required();

    auto* unstr = app.add_subcommand("unstraighten", "right adjoint at a truncation depth");
    unstr->add_option("--depth", depth, "truncation depth");
    unstr->add_option("file", file, "instance document with A, B, W")->required();

    auto* ver = app.add_subcommand("verify-theorem", "run one theorem instance");
    ver->add_option("--name", name, "theorem tag");
    ver->add_option("file", file, "instance document")->required();

    auto* suite_cmd = app.add_subcommand("run-suite", "run a seeded suite");
    suite_cmd->add_option("--name", suite, "suite name")->required();
    suite_cmd->add_option("--seed", seed, "random seed");
    suite_cmd->add_option("--count", count, "instance count");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (cutoff == cutoff_unset) cutoff = default_cutoff();
        if (fib->parsed()) {
            auto k = fib_kind_from_string(kind_str);
            if (!k) {
                err << "unknown fibration kind '" << kind_str << "'\n";
                return exit_usage;
            }
            Document d = parse_document(read_file(file));
            if (!d.map_v) {
                err << "check-fibration expects a map document\n";
                return exit_usage;
            }
            FibrationReport rep = is_fibration(*k, *d.map_v, cutoff);
            emit_report(out, render_report(rep), json);
            return rep.verdict ? exit_pass : exit_fail;
        }
        if (lift->parsed()) {
            Document d = parse_document(read_file(file));
            if (!d.instance_v || !d.instance_v->i || !d.instance_v->q ||
                !d.instance_v->top || !d.instance_v->bottom) {
                err << "solve-lift expects an instance with i, q, top, bottom\n";
                return exit_usage;
            }
            LiftingProblem p{*d.instance_v->i, *d.instance_v->q, *d.instance_v->top,
                             *d.instance_v->bottom};
            p.validate();
            auto h = solve_lifting(p);
            if (!h) {
                emit_report(out, {"verdict fail", "no filler"}, json);
                return exit_fail;
            }
            emit(out, wrap(*h), json);
            return exit_pass;
        }
        if (cert->parsed()) {
            auto cls = family_from_string(cls_str);
            if (!cls) {
                err << "unknown class '" << cls_str << "'\n";
                return exit_usage;
            }
            Document d = parse_document(read_file(file));
            if (!d.map_v) {
                err << "certify-anodyne expects a map document\n";
                return exit_usage;
            }
            auto c = search_certificate(*d.map_v, *cls, SearchBounds{max_steps, max_param, 20000});
            if (!c) {
                emit_report(out, {"verdict unknown", "none-within-bounds"}, json);
                return exit_unknown;
            }
            emit(out, wrap(*c), json);
            return exit_pass;
        }
        if (str->parsed()) {
            Document d = parse_document(read_file(file));
            if (!d.functor_v) {
                err << "straighten expects a functor document\n";
                return exit_usage;
            }
            // the indexing category supplies the base product
            BaseProduct base = make_base(d.functor_v->indexing, d.functor_v->base);
            Lambda L = lambda_straighten(*d.functor_v, base);
            emit(out, wrap(L.result.structure), json);
            return exit_pass;
        }
        if (unstr->parsed()) {
            Document d = parse_document(read_file(file));
            if (!d.instance_v || !d.instance_v->A || !d.instance_v->b_plus ||
                !d.instance_v->W) {
                err << "unstraighten expects an instance with A, B, W\n";
                return exit_usage;
            }
            BaseProduct base = make_base(d.instance_v->A, *d.instance_v->b_plus);
            Rho R = rho_unstraighten(*d.instance_v->W, base, depth);
            emit(out, wrap(R.functor), json);
            return exit_pass;
        }
        if (ver->parsed()) {
            Document d = parse_document(read_file(file));
            if (!d.instance_v) {
                err << "verify-theorem expects an instance document\n";
                return exit_usage;
            }
            TheoremInstance t = *d.instance_v;
            if (!name.empty()) t.theorem = name;
            InstanceReport rep = run_instance(t);
            emit_report(out, render_report(rep), json);
            switch (rep.verdict) {
            case Verdict::Pass: return exit_pass;
            case Verdict::Fail: return exit_fail;
            case Verdict::Unknown: return exit_unknown;
            }
        }
        if (suite_cmd->parsed()) {
            SuiteReport rep = run_suite(suite, seed, count);
            emit_report(out, render_report(rep), json);
            if (rep.fails > 0) return exit_fail;
            if (rep.unknowns > 0) return exit_unknown;
            return exit_pass;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return exit_usage;
    } catch (const MssetError& e) {
        err << "error: " << e.what() << "\n";
        return exit_fail;
    }
    err << "no subcommand\n";
    return exit_usage;
}

} // namespace msset
