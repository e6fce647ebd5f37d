#pragma once

// The polyau command line: local, certify, exceptions, witness, series.
// Exit codes: 0 ok, 1 usage, 2 locally obstructed, 3 inconclusive or unverified,
// 4 scan budget exceeded, 5 family congruence unsolvable.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyau/polyau.hpp"

namespace polyau::cli {

using nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kObstructed = 2,
    kInconclusive = 3,
    kBudget = 4,
    kFamilyUnsolvable = 5,
};

struct RunConfig {
    std::int64_t max_n = 1000;
    std::int64_t ell_max = 100;
    std::int64_t r = 0;
    std::int64_t budget = kDefaultBudget;
    std::int64_t bound = 1000;
    std::string format; ///< empty: per-command default
    std::string t_rule = "common";
    int jobs = 1;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, int jobs, Fn fn)
{
    std::vector<std::optional<T>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(1, jobs));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(threads, count); ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    std::vector<T> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

inline json int_json(i128 v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
    }
    return polyau::to_string(v);
}

inline json report_json(const LocalReport& r)
{
    json j{{"prime", r.prime},
           {"obstructed", r.obstructed()},
           {"isotropy", to_string(r.isotropy)},
           {"escape", to_string(r.escape.kind)},
           {"outside_trichotomy", r.outside_trichotomy}};
    j["witness"] = r.obstruction ? json{{"residue", r.obstruction->residue}, {"modulus", r.obstruction->modulus}}
                                 : json(nullptr);
    if (r.escape.kind == Escape::BoundedDivisibility) j["bound_exponent"] = r.escape.bound_exponent;
    return j;
}

inline std::string report_text(const LocalReport& r)
{
    std::string s = "p=" + std::to_string(r.prime) + ": ";
    if (r.obstructed()) {
        s += "obstruction, misses n = " + std::to_string(r.obstruction->residue) + " (mod " +
             std::to_string(r.obstruction->modulus) + ")";
    } else {
        s += "no obstruction, escape " + std::string(to_string(r.escape.kind));
        if (r.escape.kind == Escape::BoundedDivisibility) s += " k=" + std::to_string(r.escape.bound_exponent);
    }
    if (r.isotropy != Isotropy::NotApplicable) s += ", " + std::string(to_string(r.isotropy));
    if (r.outside_trichotomy) s += ", decided by residue scan";
    return s;
}

inline json form_json(const FormParams& f)
{
    return {{"a", f.a()}, {"b", f.b()}, {"c", f.c()}, {"m", f.m()}};
}

struct Output {
    json params = json::object();
    json results = json::array();
};

class App {
public:
    App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args)
    {
        CLI::App app{"Local obstructions, almost-universality certificates and exception sets for "
                     "weighted sums of generalized polygonal numbers",
                     "polyau"};
        app.set_config("--config", "", "INI file of key=value defaults; command-line flags win");
        app.require_subcommand(1);
        app.add_option("--max-n", cfg_.max_n, "Largest n for exception sieves")->check(CLI::NonNegativeNumber);
        app.add_option("--ell-max", cfg_.ell_max, "Largest prime l for witness records")->check(CLI::PositiveNumber);
        app.add_option("--r", cfg_.r, "Family index r for P(1,1,3,30r+17)")->check(CLI::NonNegativeNumber);
        app.add_option("--budget", cfg_.budget, "Largest target any scan may touch")->check(CLI::PositiveNumber);
        app.add_option("--bound", cfg_.bound, "Grid bound for series output")->check(CLI::NonNegativeNumber);
        app.add_option("--format", cfg_.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        app.add_option("--jobs", cfg_.jobs, "Worker threads")->check(CLI::PositiveNumber);
        app.add_option("--t-rule", cfg_.t_rule, "Candidate t set rule")->check(CLI::IsMember({"common", "union"}));

        std::int64_t a = 0, b = 0, c = 0, m = 0;
        auto add_form = [&](CLI::App* sub) {
            sub->add_option("a", a)->required();
            sub->add_option("b", b)->required();
            sub->add_option("c", c)->required();
            sub->add_option("m", m)->required();
            sub->fallthrough();
        };
        auto* local = app.add_subcommand("local", "Local obstruction report per relevant prime");
        add_form(local);
        auto* certify_cmd = app.add_subcommand("certify", "Almost-universality certificate");
        add_form(certify_cmd);
        auto* exceptions = app.add_subcommand("exceptions", "Exception set up to --max-n");
        add_form(exceptions);
        auto* series = app.add_subcommand("series", "Theta series of the completed-square coset up to --bound");
        add_form(series);
        auto* witness = app.add_subcommand("witness", "Excluded n for P(1,1,3,30r+17)");
        witness->fallthrough();

        std::vector<const char*> argv{"polyau"};
        for (const auto& s : args) argv.push_back(s.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out_ << app.help();
            return kOk;
        } catch (const CLI::ParseError& e) {
            err_ << "error: " << e.what() << "\n" << app.help();
            return kUsage;
        }

        const auto start = std::chrono::steady_clock::now();
        std::string command;
        Output o;
        int code = kOk;
        try {
            if (*local) {
                command = "local";
                code = cmd_local(FormParams(a, b, c, m), o);
            } else if (*certify_cmd) {
                command = "certify";
                code = cmd_certify(FormParams(a, b, c, m), o);
            } else if (*exceptions) {
                command = "exceptions";
                code = cmd_exceptions(FormParams(a, b, c, m), o);
            } else if (*series) {
                command = "series";
                code = cmd_series(FormParams(a, b, c, m), o);
            } else {
                command = "witness";
                code = cmd_witness(o);
            }
        } catch (const BudgetExceeded& e) {
            err_ << "error: " << e.what() << " (raise --budget)\n";
            return kBudget;
        } catch (const FamilyUnsolvable& e) {
            err_ << "error: " << e.what() << "\n";
            return kFamilyUnsolvable;
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        }
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        if (format_for(command) == "json") {
            json doc{{"command", command}, {"params", o.params}, {"results", o.results}, {"timing_ms", elapsed.count()}};
            out_ << doc.dump(2) << '\n';
        }
        return code;
    }

private:
    struct FamilyUnsolvable : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    std::string format_for(const std::string& command) const
    {
        if (!cfg_.format.empty()) return cfg_.format;
        return command == "exceptions" ? "csv" : "json";
    }

    int cmd_local(const FormParams& form, Output& o)
    {
        o.params = form_json(form);
        const auto reports = analyze_local(form);
        const std::string fmt = format_for("local");
        if (fmt == "csv") out_ << "prime,obstructed,residue,modulus,isotropy,escape,bound_exponent,outside_trichotomy\n";
        for (const auto& r : reports) {
            if (fmt == "json") {
                o.results.push_back(report_json(r));
            } else if (fmt == "csv") {
                out_ << r.prime << ',' << (r.obstructed() ? 1 : 0) << ',';
                if (r.obstruction) out_ << r.obstruction->residue << ',' << r.obstruction->modulus;
                else out_ << ',';
                out_ << ',' << to_string(r.isotropy) << ',' << to_string(r.escape.kind) << ',';
                if (r.escape.kind == Escape::BoundedDivisibility) out_ << r.escape.bound_exponent;
                out_ << ',' << (r.outside_trichotomy ? 1 : 0) << '\n';
            } else {
                out_ << report_text(r) << '\n';
            }
        }
        return any_obstruction(reports) ? kObstructed : kOk;
    }

    int cmd_certify(const FormParams& form, Output& o)
    {
        const TSetRule rule = cfg_.t_rule == "union" ? TSetRule::PeriodUnion : TSetRule::CommonDivisor;
        o.params = form_json(form);
        o.params["t_rule"] = to_string(rule);
        const AUCertificate cert = certify(form, rule);
        const std::string fmt = format_for("certify");
        if (fmt == "json") {
            json cands = json::array();
            for (const auto& t : cert.candidates) {
                cands.push_back({{"t", t.t}, {"solvable", t.witness.has_value()},
                                 {"r", t.witness ? json(*t.witness) : json(nullptr)}});
            }
            json local = json::array();
            for (const auto& r : cert.local) local.push_back(report_json(r));
            o.results.push_back({{"form", form_json(form)},
                                 {"verdict", to_string(cert.verdict)},
                                 {"u", cert.u},
                                 {"s", cert.s},
                                 {"candidates", cands},
                                 {"local", local}});
        } else if (fmt == "csv") {
            out_ << "a,b,c,m,verdict,u,s,t,solvable,r\n";
            auto prefix = [&] {
                out_ << form.a() << ',' << form.b() << ',' << form.c() << ',' << form.m() << ','
                     << to_string(cert.verdict) << ',' << cert.u << ',' << cert.s << ',';
            };
            if (cert.candidates.empty()) {
                prefix();
                out_ << ",,\n";
            }
            for (const auto& t : cert.candidates) {
                prefix();
                out_ << t.t << ',' << (t.witness ? 1 : 0) << ',';
                if (t.witness) out_ << *t.witness;
                out_ << '\n';
            }
        } else {
            out_ << form.to_string() << ": " << to_string(cert.verdict) << " (u=" << cert.u << ", s=" << cert.s << ")\n";
            for (const auto& t : cert.candidates) {
                out_ << "  t=" << t.t << ": "
                     << (t.witness ? "solvable, r=" + std::to_string(*t.witness) : std::string("unsolvable")) << '\n';
            }
            for (const auto& r : cert.local) out_ << "  " << report_text(r) << '\n';
        }
        switch (cert.verdict) {
        case Verdict::CertifiedAlmostUniversal: return kOk;
        case Verdict::LocallyObstructed: return kObstructed;
        case Verdict::Inconclusive: break;
        }
        return kInconclusive;
    }

    int cmd_exceptions(const FormParams& form, Output& o)
    {
        o.params = form_json(form);
        o.params["max_n"] = cfg_.max_n;
        o.params["budget"] = cfg_.budget;
        const auto rows = describe_exceptions(form, exception_set(form, cfg_.max_n, cfg_.budget));
        const std::string fmt = format_for("exceptions");
        if (fmt == "csv") {
            write_exceptions_csv(out_, rows);
        } else if (fmt == "json") {
            for (const auto& row : rows) {
                o.results.push_back({{"n", row.n},
                                     {"ell_n", int_json(row.ell_n)},
                                     {"square_part", row.square_part},
                                     {"t_classes", row.t_classes}});
            }
        } else {
            for (const auto& row : rows) {
                out_ << row.n << "  ell=" << polyau::to_string(row.ell_n) << "  square=" << row.square_part << "  t=";
                for (std::size_t i = 0; i < row.t_classes.size(); ++i) out_ << (i ? "," : "") << row.t_classes[i];
                out_ << '\n';
            }
        }
        return kOk;
    }

    int cmd_series(const FormParams& form, Output& o)
    {
        o.params = form_json(form);
        o.params["bound"] = cfg_.bound;
        const QSeries f = form_theta(form, cfg_.bound);
        const std::string fmt = format_for("series");
        if (fmt == "text") {
            write_text(out_, f);
        } else if (fmt == "csv") {
            out_ << "k,coefficient\n";
            for (const Term& t : f.terms()) out_ << t.k << ',' << t.coeff << '\n';
        } else {
            o.params["scale"] = f.scale();
            for (const Term& t : f.terms()) o.results.push_back({{"k", t.k}, {"coefficient", t.coeff}});
        }
        return kOk;
    }

    int cmd_witness(Output& o)
    {
        o.params = {{"r", cfg_.r}, {"ell_max", cfg_.ell_max}, {"budget", cfg_.budget}, {"jobs", cfg_.jobs}};
        if (!family_solvability(cfg_.r)) {
            throw FamilyUnsolvable("r = " + std::to_string(cfg_.r) +
                                   " is 2 (mod 5): l^2 = (30r+13)^2 (mod 48r+24) has no solution with l = 1, 19 "
                                   "(mod 30), so the family yields no excluded n");
        }
        const auto ells = admissible_ells(cfg_.r, cfg_.ell_max);
        // Check the budget up front so no worker starts a scan it cannot finish.
        for (std::int64_t l : ells) {
            const auto n = witness_excluded_n(cfg_.r, l);
            if (*n > cfg_.budget) throw BudgetExceeded(*n);
        }
        const auto records = parallel_map<WitnessRecord>(ells.size(), cfg_.jobs, [&](std::size_t i) {
            return *witness_record(cfg_.r, ells[i], cfg_.budget);
        });
        bool all = true;
        const std::string fmt = format_for("witness");
        if (fmt == "csv") out_ << "r,ell,n,verified,timing_ms\n";
        for (const auto& rec : records) {
            all = all && rec.verified;
            if (fmt == "json") {
                o.results.push_back({{"r", rec.r},
                                     {"ell", rec.ell},
                                     {"n", rec.n},
                                     {"verified", rec.verified},
                                     {"timing_ms", rec.timing_ms}});
            } else if (fmt == "csv") {
                out_ << rec.r << ',' << rec.ell << ',' << rec.n << ',' << (rec.verified ? 1 : 0) << ',' << rec.timing_ms
                     << '\n';
            } else {
                out_ << "r=" << rec.r << " l=" << rec.ell << " n=" << rec.n
                     << (rec.verified ? " verified" : " NOT verified") << '\n';
            }
        }
        return all ? kOk : kInconclusive;
    }

    std::ostream& out_;
    std::ostream& err_;
    RunConfig cfg_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    return App(out, err).run(args);
}

} // namespace polyau::cli
