#include "tik/cli.hpp"

#include "tik/errors.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

namespace tik {

namespace {

unsigned parse_env_uint(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (value.empty() || pos != value.size() || v == 0 || v > (1ul << 20))
        throw SchemaError(key + " must be a positive integer, got \"" + value + "\"");
    return unsigned(v);
}

// The algebra lives behind a pointer because the table refers back to it
// and Loaded values get moved around.
struct Loaded {
    std::unique_ptr<BoundAlgebra> A;
    IndecTable T;
    ConfigEcho echo;
    Caps caps;
};

Loaded load(const std::string& path, const CliOptions& opts) {
    Loaded L;
    L.caps.max_mult = opts.max_mult;
    L.caps.jobs = opts.jobs;
    L.A = std::make_unique<BoundAlgebra>(parse_algebra_file(path, opts.field, L.caps));
    const int d = opts.dim_bound ? *opts.dim_bound
                                 : (L.A->file_dim_bound ? *L.A->file_dim_bound : 0);
    L.T = enumerate_indecomposables(*L.A, d, L.caps);
    L.echo.field = L.A->p;
    L.echo.dim_bound = L.T.dim_bound;
    L.echo.max_mult = opts.max_mult;
    L.echo.jobs = opts.jobs;
    return L;
}

int verification_failure(std::ostream& err, const std::exception& e) {
    err << "tik: verification failure: " << e.what() << "\n";
    return exit_verify_failure;
}

int guard(std::ostream& err, const std::string& cap_hint,
          const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const CapExceeded& e) {
        err << "tik: resource cap: " << e.what();
        if (!cap_hint.empty()) err << "; " << cap_hint;
        err << "\n";
        return exit_resource_cap;
    } catch (const TooManyIndecs& e) {
        err << "tik: resource cap: " << e.what() << "\n";
        return exit_resource_cap;
    } catch (const NoBrick& e) {
        return verification_failure(err, e);
    } catch (const MultipleBricks& e) {
        return verification_failure(err, e);
    } catch (const NotEnoughProjectives& e) {
        return verification_failure(err, e);
    } catch (const CriteriaDisagree& e) {
        return verification_failure(err, e);
    } catch (const BijectionViolation& e) {
        return verification_failure(err, e);
    } catch (const TheoremViolation& e) {
        return verification_failure(err, e);
    } catch (const std::exception& e) {
        err << "tik: input error: " << e.what() << "\n";
        return exit_input_error;
    }
}

//// verify: frozen fixture expectations /////////////////////////////////////

struct Row {
    std::string name;
    bool pass = false;
    std::string detail;
};

class Checker {
  public:
    explicit Checker(std::string prefix) : prefix_(std::move(prefix)) {}

    template <class T>
    void eq(const std::string& name, const T& got, const T& expected) {
        Row r;
        r.name = prefix_ + ": " + name;
        r.pass = (got == expected);
        if (!r.pass) {
            std::ostringstream os;
            os << std::boolalpha << "expected " << expected << ", got " << got;
            r.detail = os.str();
        }
        rows.push_back(std::move(r));
    }

    void fail(const std::string& name, const std::string& detail) {
        rows.push_back({prefix_ + ": " + name, false, detail});
    }

    std::vector<Row> rows;

  private:
    std::string prefix_;
};

int name_idx(const IndecTable& T, const std::string& name) {
    for (int i = 0; i < T.n(); ++i)
        if (T.names[std::size_t(i)] == name) return i;
    throw SchemaError("fixture table has no indecomposable named \"" + name + "\"");
}

Subcat bits_of(const IndecTable& T, std::initializer_list<const char*> names) {
    Subcat s = 0;
    for (const char* n : names) s |= Subcat(1) << name_idx(T, n);
    return s;
}

std::string joined(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i];
    }
    return out;
}

void verify_a2(const Loaded& L, Checker& ck) {
    const IndecTable& T = L.T;
    TorsCtx ctx = make_tors_ctx(T, L.caps);
    ck.eq<int>("indec count", T.n(), 3);
    ck.eq<std::size_t>("tors count", ctx.tors.size(), 5);
    ck.eq<std::size_t>("ice count", enumerate_ice(ctx, L.caps).size(), 6);

    std::vector<std::string> labels;
    for (const HasseArrow& a : ctx.hd.arrows)
        labels.push_back(T.names[std::size_t(a.label)]);
    ck.eq<std::string>("tors edge labels", joined(labels), "1,1,2,2,2/1");

    std::vector<std::string> mods;
    for (const WideTauTiltingPair& p : enumerate_wttilt(ctx, L.caps))
        mods.push_back(expr_name(T, p.module));
    ck.eq<std::string>("wide tau-tilting modules", joined(mods),
                       "0,1,1+2/1,2,2+2/1,2/1");

    ck.eq<std::size_t>("rigid count", enumerate_rigid(T, L.caps).size(), 6);
    ck.eq<bool>("ice out-degrees match progenerator sizes",
                question_check(ctx, L.caps).holds, true);
}

void verify_a3(const Loaded& L, Checker& ck) {
    const IndecTable& T = L.T;
    TorsCtx ctx = make_tors_ctx(T, L.caps);
    ck.eq<int>("indec count", T.n(), 6);
    ck.eq<std::size_t>("tors count", ctx.tors.size(), 14);
    ck.eq<std::size_t>("ice count", enumerate_ice(ctx, L.caps).size(), 22);

    RigidHasse rh = rigid_hasse(ctx, L.caps);
    ck.eq<std::size_t>("rigid count", rh.modules.size(), 22);
    ck.eq<std::size_t>("rigid Hasse arrows", rh.hd.arrows.size(), 41);

    ModuleExpr M;
    M.add(name_idx(T, "2"));
    M.add(name_idx(T, "2/1"));
    ck.eq<std::string>("mutation of 2+2/1 at 2",
                       expr_name(T, mutate(T, M, name_idx(T, "2"), L.caps)), "2/1");
    ck.eq<std::string>("mutation of 2+2/1 at 2/1",
                       expr_name(T, mutate(T, M, name_idx(T, "2/1"), L.caps)), "2");

    std::set<std::string> sttilt;
    for (Subcat U : ctx.tors) sttilt.insert(expr_name(T, progenerator(T, U)));
    int red = 0;
    for (const ModuleExpr& m : rh.modules)
        if (!sttilt.count(expr_name(T, m))) ++red;
    ck.eq<int>("rigid modules that are not support tau-tilting", red, 8);

    bool arrows_ok = true;
    std::string detail;
    try {
        verify_arrow_theorem(ctx, L.caps);
    } catch (const std::exception& e) {
        arrows_ok = false;
        detail = e.what();
    }
    if (arrows_ok)
        ck.eq<bool>("rigid Hasse arrows are mutations", true, true);
    else
        ck.fail("rigid Hasse arrows are mutations", detail);

    ck.eq<bool>("ice out-degrees match progenerator sizes",
                question_check(ctx, L.caps).holds, true);
}

void verify_nak(const Loaded& L, Checker& ck) {
    const IndecTable& T = L.T;
    TorsCtx ctx = make_tors_ctx(T, L.caps);
    ck.eq<int>("indec count", T.n(), 5);
    ck.eq<std::size_t>("tors count", ctx.tors.size(), 12);
    ck.eq<std::size_t>("ice count", enumerate_ice(ctx, L.caps).size(), 16);

    const Subcat U = bits_of(T, {"3", "3/2"});
    ck.eq<std::string>("join of covers above Fac(3+3/2)",
                       subcat_label(T, ctx.uplus_of(U)), "{1, 2, 2/1, 3, 3/2}");
    ck.eq<std::string>(
        "wide tau-tilting module of [Fac(3+3/2), Fac(2+2/1+3/2)]",
        expr_name(T, wide_tau_tilting_of_interval(
                         T, U, bits_of(T, {"2", "3", "2/1", "3/2"}))),
        "2+2/1");
    ck.eq<bool>("[Fac 3, Fac(2+3/2)] is not an ice interval",
                is_ice_interval(ctx, bits_of(T, {"3"}), bits_of(T, {"2", "3", "3/2"})),
                false);
    ck.eq<bool>("direct oracle rejects {2, 3/2}",
                is_ice_direct(T, bits_of(T, {"2", "3/2"}), L.caps.max_mult, L.caps),
                false);
    ck.eq<bool>("ice out-degrees match progenerator sizes",
                question_check(ctx, L.caps).holds, true);
}

void verify_nonnak(const Loaded& L, Checker& ck) {
    const IndecTable& T = L.T;
    TorsCtx ctx = make_tors_ctx(T, L.caps);
    ck.eq<int>("indec count", T.n(), 7);
    ck.eq<std::size_t>("tors count", ctx.tors.size(), 12);
    ck.eq<std::size_t>("ice count", enumerate_ice(ctx, L.caps).size(), 16);

    ck.eq<bool>("Fac 1 is a torsion class", ctx.node(bits_of(T, {"1"})) >= 0, true);
    ck.eq<bool>("add 3 is not a torsion class", ctx.node(bits_of(T, {"3"})) >= 0,
                false);

    const int top = ctx.hd.index_of(sc_full(T.n()));
    std::vector<std::string> labels;
    for (const HasseArrow& a : ctx.hd.arrows)
        if (a.from == top) labels.push_back(T.names[std::size_t(a.label)]);
    ck.eq<std::string>("edge labels leaving the whole category", joined(labels),
                       "1,2,3");
    ck.eq<bool>("ice out-degrees match progenerator sizes",
                question_check(ctx, L.caps).holds, true);
}

} // namespace

CliOptions apply_env(CliOptions opts, const std::map<std::string, std::string>& env) {
    auto lookup = [&](const char* key) -> const std::string* {
        auto it = env.find(key);
        return it == env.end() ? nullptr : &it->second;
    };
    if (!opts.field)
        if (const std::string* v = lookup("TIK_FIELD"))
            opts.field = parse_env_uint("TIK_FIELD", *v);
    if (!opts.dim_bound)
        if (const std::string* v = lookup("TIK_DIM_BOUND"))
            opts.dim_bound = int(parse_env_uint("TIK_DIM_BOUND", *v));
    return opts;
}

int cmd_analyze(const std::string& path, const CliOptions& opts, std::ostream& out,
                std::ostream& err) {
    return guard(err, "", [&] {
        Loaded L = load(path, opts);
        out << serialize_report(build_report(path, L.T, L.echo, L.caps)) << "\n";
        return exit_ok;
    });
}

int cmd_hasse(const std::string& path, const std::string& what,
              const CliOptions& opts, std::ostream& out, std::ostream& err) {
    return guard(err, "", [&] {
        if (what != "tors" && what != "ice" && what != "rigid")
            throw SchemaError("--what must be tors, ice or rigid, got \"" + what +
                              "\"");
        if (opts.format != "dot" && opts.format != "json")
            throw SchemaError("--format must be dot or json, got \"" + opts.format +
                              "\"");
        Loaded L = load(path, opts);
        TorsCtx ctx = make_tors_ctx(L.T, L.caps);
        Diagram d = what == "tors"  ? diagram_tors(ctx)
                    : what == "ice" ? diagram_ice(ctx, L.caps)
                                    : diagram_rigid(ctx, L.caps);
        if (opts.format == "dot")
            out << to_dot(d);
        else
            out << to_json(d) << "\n";
        return exit_ok;
    });
}

int cmd_verify(const std::string& fixture, const std::string& fixtures_dir,
               const CliOptions& opts, std::ostream& out, std::ostream& err) {
    return guard(err, "", [&] {
        static const std::vector<std::string> known = {"a2", "a3", "nak", "nonnak"};
        std::vector<std::string> run;
        if (fixture == "all")
            run = known;
        else if (std::find(known.begin(), known.end(), fixture) != known.end())
            run = {fixture};
        else
            throw SchemaError("--fixture must be a2, a3, nak, nonnak or all, got \"" +
                              fixture + "\"");

        std::vector<Row> rows;
        for (const std::string& name : run) {
            Checker ck(name);
            try {
                Loaded L = load(fixtures_dir + "/" + name + ".json", opts);
                if (name == "a2")
                    verify_a2(L, ck);
                else if (name == "a3")
                    verify_a3(L, ck);
                else if (name == "nak")
                    verify_nak(L, ck);
                else
                    verify_nonnak(L, ck);
            } catch (const std::exception& e) {
                ck.fail("run", e.what());
            }
            rows.insert(rows.end(), ck.rows.begin(), ck.rows.end());
        }

        int passed = 0;
        for (const Row& r : rows) {
            out << (r.pass ? "PASS  " : "FAIL  ") << r.name;
            if (!r.pass && !r.detail.empty()) out << " (" << r.detail << ")";
            out << "\n";
            passed += r.pass ? 1 : 0;
        }
        out << "verify: " << passed << "/" << rows.size() << " checks passed\n";
        return passed == int(rows.size()) ? exit_ok : exit_verify_failure;
    });
}

int cmd_oracle(const std::string& path, const std::string& check,
               const CliOptions& opts, std::ostream& out, std::ostream& err) {
    return guard(err, "try a smaller --max-mult", [&] {
        if (check != "ice" && check != "tors")
            throw SchemaError("--check must be ice or tors, got \"" + check + "\"");
        if (opts.max_mult < 1)
            throw SchemaError("--max-mult must be at least 1 for the oracle");

        Loaded L = load(path, opts);
        const IndecTable& T = L.T;
        if (T.n() > 20)
            throw CapExceeded("subset scan over " + std::to_string(T.n()) +
                              " indecomposables");

        std::vector<Subcat> thm, def;
        if (check == "tors") {
            thm = enumerate_tors(T, L.caps);
            for (Subcat S = 0; S < (Subcat(1) << T.n()); ++S)
                if (is_torsion_class(T, S)) def.push_back(S);
        } else {
            TorsCtx ctx = make_tors_ctx(T, L.caps);
            thm = enumerate_ice(ctx, L.caps);
            for (Subcat S = 0; S < (Subcat(1) << T.n()); ++S)
                if (is_ice_direct(T, S, opts.max_mult, L.caps)) def.push_back(S);
        }

        std::set<Subcat> ts(thm.begin(), thm.end()), ds(def.begin(), def.end());
        if (ts == ds) {
            out << check << " oracle: definition-level " << ds.size()
                << " = theorem-based " << ts.size() << " (agreement)\n";
            return exit_ok;
        }
        out << check << " oracle: definition-level " << ds.size()
            << " != theorem-based " << ts.size() << "\n";
        for (Subcat S : ds)
            if (!ts.count(S)) out << "  definition only: " << subcat_label(T, S) << "\n";
        for (Subcat S : ts)
            if (!ds.count(S)) out << "  theorem only: " << subcat_label(T, S) << "\n";
        return exit_verify_failure;
    });
}

} // namespace tik
