#include <CLI11.hpp>

#include <iostream>

#include "semifact/errors.hpp"
#include "semifact/serialize.hpp"

using namespace semifact;

namespace {

struct Options {
    std::string semialgebra = "nat";
    std::string format = "json";
    std::string mode = "add";
    std::string target;
    std::string element;
    std::string matrix;
    std::string suite = "all";
    long m = 2;
    long pool = 3;
    std::uint64_t seed = 1;
    bool strict = false;
    bool unit_triangular = false;
    Bounds bounds;
};

struct StrictFailure {};

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string inline_text(const Json& v) {
    if (v.is_object()) {
        std::string s;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!s.empty()) s += ' ';
            s += it.key() + "=" + inline_text(it.value());
        }
        return s;
    }
    if (v.is_array()) {
        std::string s = "[";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + inline_text(v[i]);
        return s + "]";
    }
    return scalar_text(v);
}

// The table view is rendered from the JSON document.
void print_table(const Json& j, std::ostream& os) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << it.key() << ":\n";
            for (const Json& x : v) os << "  - " << inline_text(x) << '\n';
        } else if (v.is_array()) {
            os << it.key() << ": ";
            for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << inline_text(v[i]);
            os << '\n';
        } else {
            os << it.key() << ": " << inline_text(v) << '\n';
        }
    }
}

void emit(const Options& o, const Json& j) {
    if (o.format == "table")
        print_table(j, std::cout);
    else
        std::cout << j.dump() << '\n';
}

Mode parse_mode(const std::string& s) {
    if (s == "add" || s == "additive") return Mode::Additive;
    if (s == "mult" || s == "multiplicative") return Mode::Multiplicative;
    throw ParseError("mode must be add or mult");
}

std::string input(const Options& o) {
    if (!o.element.empty()) return o.element;
    if (!o.target.empty()) return o.target;
    throw ParseError("missing element");
}

std::string matrix_input(const Options& o) {
    if (!o.matrix.empty()) return o.matrix;
    if (!o.target.empty()) return o.target;
    throw ParseError("missing --matrix");
}

// --strict turns incomplete results into exit 3 after printing them.
void finish(const Options& o, const Json& j, bool conclusive) {
    emit(o, j);
    if (o.strict && !conclusive) throw StrictFailure{};
}

void run_command(const std::string& cmd, const Options& o) {
    const Semialgebra S = Semialgebra::parse(o.semialgebra);
    const Bounds& b = o.bounds;
    Json head{{"command", cmd}, {"semialgebra", S.str()}};

    auto join = [](Json a, const Json& more) {
        a.update(more);
        return a;
    };
    auto with = [&](const Json& body) { return join(head, body); };

    if (cmd == "atoms") {
        auto e = list_atoms(S, parse_mode(o.mode), b);
        finish(o, join(with(Json{{"mode", o.mode}}), to_json(e)), e.complete);
    } else if (cmd == "member") {
        Element x = Element::parse(input(o));
        emit(o, with({{"element", x.str()}, {"member", contains(S, x)}}));
    } else if (cmd == "factorize") {
        Element x = Element::parse(input(o));
        Mode m = parse_mode(o.mode);
        auto e = m == Mode::Additive ? add_factorizations(S, x, b) : mult_factorizations(S, x, b);
        finish(o, join(with({{"mode", o.mode}, {"element", x.str()}}), to_json(e)), e.complete);
    } else if (cmd == "lengths") {
        Element x = Element::parse(input(o));
        Mode m = parse_mode(o.mode);
        auto ls = m == Mode::Additive ? add_length_set(S, x, b) : mult_length_set(S, x, b);
        finish(o, join(with({{"mode", o.mode}, {"element", x.str()}}), to_json(ls)), ls.complete);
    } else if (cmd == "divisors") {
        Element x = Element::parse(input(o));
        Mode m = parse_mode(o.mode);
        auto e = m == Mode::Additive ? add_divisors(S, x, b) : mult_divisors(S, x, b);
        finish(o, join(with({{"mode", o.mode}, {"element", x.str()}}), to_json(e)), e.complete);
    } else if (cmd == "digits") {
        Element x = Element::parse(input(o));
        Json digits = Json::array();
        for (const Int& c : canonical_digits(S, x.rat())) digits.push_back(c.get_str());
        emit(o, with({{"element", x.str()}, {"digits", digits}}));
    } else if (cmd == "mat-factorize") {
        UTMatrix B = UTMatrix::parse(S, matrix_input(o));
        auto e = rigid_factorizations(B, b, o.unit_triangular);
        finish(o, join(with({{"matrix", B.str()}}), to_json(e)), e.complete);
    } else if (cmd == "mat-atom") {
        UTMatrix A = UTMatrix::parse(S, matrix_input(o));
        Json j = with({{"matrix", A.str()}, {"atom", is_matrix_atom(A, b)}});
        if (auto s = atom_shape(A))
            j["shape"] = {{"type", s->type == AtomType::Additive ? "add" : "mult"}, {"pos", {s->i + 1, s->j + 1}}, {"atom", s->a.str()}};
        emit(o, j);
    } else if (cmd == "hfm") {
        auto h = hfm_counterexample(S, o.m, b);
        auto ls = rigid_length_set(h.A, b);
        Json j = with(to_json(h));
        j["lengths"] = std::vector<long>(ls.lengths.begin(), ls.lengths.end());
        j["complete"] = ls.complete;
        finish(o, j, ls.complete);
    } else if (cmd == "apl-probe") {
        UTMatrix A = UTMatrix::parse(S, matrix_input(o));
        if (!is_matrix_atom(A, b)) throw DomainError(A.str() + " is not an atom");
        auto r = almost_prime_like_probe(A, b, o.pool);
        finish(o, join(with({{"matrix", A.str()}}), to_json(r)), !r.witnesses.empty());
    } else if (cmd == "accp-probe") {
        Element x = Element::parse(input(o));
        auto c = accp_probe(S, parse_mode(o.mode), x, b.depth, b);
        finish(o, join(with({{"start", x.str()}}), to_json(c)), c.found);
    }
}

int run_verify(const Options& o) {
    bool failed = false, open = false;
    for (const CheckReport& r : run_suite(o.suite, o.seed)) {
        Json j = to_json(r);
        std::cout << (o.format == "table" ? inline_text(j) : j.dump()) << '\n';
        failed = failed || r.status == Status::Fail;
        open = open || r.status == Status::Inconclusive;
    }
    if (failed) return 5;
    return o.strict && open ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factorization explorer for semialgebras of rationals and their triangular matrix monoids"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--semialgebra,-s", o.semialgebra, "nat, qnn, exp, cyclic:N/D or conducted:N/D")->capture_default_str();
        sub->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
        sub->add_option("--max-len", o.bounds.max_len)->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_option("--max-exp", o.bounds.max_exp)->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_option("--max-den", o.bounds.max_den)->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_option("--max-count", o.bounds.max_count)->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_option("--depth", o.bounds.depth)->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_flag("--strict", o.strict, "exit 3 when the answer is incomplete or inconclusive");
    };
    auto elementwise = [&](CLI::App* sub, bool with_mode) {
        common(sub);
        sub->add_option("target", o.target, "element, e.g. 9/2 or e:{1/2:3}");
        sub->add_option("--element,-x", o.element);
        if (with_mode) sub->add_option("--mode", o.mode, "add or mult")->capture_default_str();
    };
    auto matrixwise = [&](CLI::App* sub) {
        common(sub);
        sub->add_option("target", o.target, "matrix rows separated by ';', e.g. \"1,2;0,2\"");
        sub->add_option("--matrix", o.matrix);
    };

    auto* atoms = app.add_subcommand("atoms", "list atoms within the bounds");
    common(atoms);
    atoms->add_option("--mode", o.mode, "add or mult")->capture_default_str();
    elementwise(app.add_subcommand("member", "membership test"), false);
    elementwise(app.add_subcommand("factorize", "enumerate factorizations"), true);
    elementwise(app.add_subcommand("lengths", "set of lengths"), true);
    elementwise(app.add_subcommand("divisors", "enumerate divisors"), true);
    elementwise(app.add_subcommand("digits", "canonical digits in a cyclic semialgebra"), false);
    elementwise(app.add_subcommand("accp-probe", "search for a strictly ascending chain of principal ideals"), true);
    auto* mf = app.add_subcommand("mat-factorize", "rigid factorizations of a regular triangular matrix");
    matrixwise(mf);
    mf->add_flag("--unit-triangular", o.unit_triangular, "only unit triangular factors");
    matrixwise(app.add_subcommand("mat-atom", "matrix atom test"));
    auto* hfm = app.add_subcommand("hfm", "two rigid factorizations of different lengths");
    common(hfm);
    hfm->add_option("--m", o.m, "m >= 2")->capture_default_str();
    auto* apl = app.add_subcommand("apl-probe", "search for a failure of almost prime-likeness");
    matrixwise(apl);
    apl->add_option("--pool", o.pool, "atoms per kind in the search pool")->capture_default_str();
    auto* verify = app.add_subcommand("verify", "run verifier checks, one JSON line per check");
    verify->add_option("--suite", o.suite, "all, atoms, sigma, equivalence, transfer or census")->capture_default_str();
    verify->add_option("--seed", o.seed)->capture_default_str();
    verify->add_option("--format", o.format)->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    verify->add_flag("--strict", o.strict);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    // The probe multiplies the search per pool atom, so it gets tighter defaults.
    if (cmd == "apl-probe") {
        if (!apl->count("--max-len")) o.bounds.max_len = 3;
        if (!apl->count("--max-exp")) o.bounds.max_exp = 4;
        if (!apl->count("--max-count")) o.bounds.max_count = 200;
    }
    try {
        if (cmd == "verify") return run_verify(o);
        run_command(cmd, o);
        return 0;
    } catch (const StrictFailure&) {
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return 2;
    } catch (const Inconclusive& e) {
        Json j{{"command", cmd}, {"result", "Inconclusive"}, {"reason", e.what()}};
        emit(o, j);
        return o.strict ? 3 : 0;
    } catch (const ResourceExhausted& e) {
        std::cerr << "resource exhausted: " << e.what() << '\n';
        return 4;
    }
}
