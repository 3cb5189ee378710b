#include "subtrace/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "subtrace/oracle.hpp"

namespace subtrace {

namespace {

constexpr std::uint64_t kDefaultMaxPoints = 1ull << 20;
constexpr std::uint64_t kDefaultMaxPoly = 1ull << 22;

struct Options {
    unsigned k = 1;
    std::uint64_t q = 0;  // nonzero when --q was given
    std::uint64_t modulus = 0;
    std::string ext_modulus;
    std::string format = "pretty";
    unsigned threads = 1;
    std::uint64_t max_points = kDefaultMaxPoints;
    std::uint64_t max_poly = kDefaultMaxPoly;

    std::string kind_str;
    unsigned n = 0;
    std::uint32_t t = 0;
    std::uint32_t s = 0;
    bool with_oracle = false;
    unsigned max_k = 4;
};

Field make_field(const Options& opt) {
    unsigned k = opt.k;
    if (opt.q) {
        if (opt.q < 2 || (opt.q & (opt.q - 1)) != 0)
            throw PreconditionViolated("--q must be a power of two");
        k = 0;
        for (std::uint64_t v = opt.q; v > 1; v >>= 1)
            ++k;
    }
    if (opt.modulus) {
        if (opt.modulus > std::numeric_limits<std::uint32_t>::max())
            throw PreconditionViolated("--modulus out of range");
        return Field(k, static_cast<std::uint32_t>(opt.modulus));
    }
    return Field(k);
}

Budget make_budget(const Options& opt) {
    Budget b;
    b.max_points = opt.max_points;
    b.max_poly = opt.max_poly;
    return b;
}

std::string meta_line(const Field& f) {
    return "# q=" + std::to_string(f.q()) + " k=" + std::to_string(f.k()) +
           " modulus=" + std::to_string(f.modulus());
}

std::string bits_to_poly_string(std::uint32_t bits) {
    if (bits == 0)
        return "0";
    std::string out;
    for (int i = 31; i >= 0; --i) {
        if (!(bits >> i & 1))
            continue;
        if (!out.empty())
            out += "+";
        if (i == 0)
            out += "1";
        else if (i == 1)
            out += "x";
        else
            out += "x^" + std::to_string(i);
    }
    return out;
}

Kind parse_kind_or_throw(const std::string& name) {
    auto kind = kind_parse(name);
    if (!kind)
        throw PreconditionViolated("kind must be F, Fstar, or P (got '" + name +
                                   "')");
    return *kind;
}

std::optional<Poly> parse_ext_modulus(const Field& f, const Options& opt) {
    if (opt.ext_modulus.empty())
        return std::nullopt;
    return poly_from_index_list(f, opt.ext_modulus);
}

bigint closed_value(const Field& f, Kind kind, unsigned n, elem t, elem s) {
    switch (kind) {
        case Kind::F: return F_dispatch(f, n, t, s);
        case Kind::Fstar: return Fstar_closed(f, n, t, s);
        case Kind::P: return P_count(f, n, t, s);
    }
    throw Error("unreachable");
}

int do_count(const Options& opt, std::ostream& out) {
    Kind kind = parse_kind_or_throw(opt.kind_str);
    Field f = make_field(opt);
    if (opt.n < (kind == Kind::F ? 1u : 2u))
        throw DegreeTooSmall("--n too small for this kind");
    bigint value = closed_value(f, kind, opt.n, opt.t, opt.s);
    std::optional<bigint> oracle_value;
    if (opt.with_oracle) {
        Budget budget = make_budget(opt);
        CountTable table = [&] {
            switch (kind) {
                case Kind::F:
                    return oracle_F(f, opt.n, budget, opt.threads,
                                    parse_ext_modulus(f, opt));
                case Kind::Fstar:
                    return oracle_Fstar(f, opt.n, budget);
                default:
                    return oracle_P(f, opt.n, budget, opt.threads);
            }
        }();
        oracle_value = table.at(opt.t, opt.s);
    }
    bool match = !oracle_value || *oracle_value == value;
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["q"] = f.q();
        j["k"] = f.k();
        j["n"] = opt.n;
        j["kind"] = kind_name(kind);
        j["modulus"] = f.modulus();
        j["t"] = opt.t;
        j["s"] = opt.s;
        j["count"] = value.str();
        if (oracle_value) {
            j["oracle"] = oracle_value->str();
            j["match"] = match;
        }
        out << j.dump(2) << "\n";
    } else if (opt.format == "csv") {
        out << meta_line(f) << " kind=" << kind_name(kind) << " n=" << opt.n
            << "\n";
        out << "t,s,count" << (oracle_value ? ",oracle,match" : "") << "\n";
        out << opt.t << "," << opt.s << "," << value.str();
        if (oracle_value)
            out << "," << oracle_value->str() << "," << (match ? "true" : "false");
        out << "\n";
    } else {
        out << meta_line(f) << " kind=" << kind_name(kind) << " n=" << opt.n
            << " t=" << opt.t << " s=" << opt.s << "\n";
        out << value.str() << "\n";
        if (oracle_value) {
            out << "oracle " << oracle_value->str() << "\n";
            out << "match " << (match ? "yes" : "no") << "\n";
        }
    }
    return match ? 0 : 1;
}

int do_table(const Options& opt, std::ostream& out) {
    Kind kind = parse_kind_or_throw(opt.kind_str);
    Field f = make_field(opt);
    if (opt.n < 2)
        throw DegreeTooSmall("--n must be >= 2 for tables");
    Budget budget = make_budget(opt);
    budget.check_points(static_cast<std::uint64_t>(f.q()) * f.q());
    CountTable table = make_table(f, opt.n, kind);
    if (opt.format == "json") {
        out << table.to_json().dump(2) << "\n";
    } else if (opt.format == "csv") {
        out << meta_line(f) << " kind=" << kind_name(kind) << " n=" << opt.n
            << "\n";
        out << table.to_csv();
    } else {
        out << meta_line(f) << " kind=" << kind_name(kind) << " n=" << opt.n
            << "\n";
        // rows are t, columns are s
        std::vector<size_t> width(f.q(), 1);
        for (elem s = 0; s < f.q(); ++s) {
            width[s] = std::to_string(s).size();
            for (elem t = 0; t < f.q(); ++t)
                width[s] = std::max(width[s], table.at(t, s).str().size());
        }
        size_t head = std::string("t\\s").size();
        for (elem t = 0; t < f.q(); ++t)
            head = std::max(head, std::to_string(t).size());
        auto pad = [&](const std::string& text, size_t w) {
            return std::string(w > text.size() ? w - text.size() : 0, ' ') + text;
        };
        out << pad("t\\s", head);
        for (elem s = 0; s < f.q(); ++s)
            out << " " << pad(std::to_string(s), width[s]);
        out << "\n";
        for (elem t = 0; t < f.q(); ++t) {
            out << pad(std::to_string(t), head);
            for (elem s = 0; s < f.q(); ++s)
                out << " " << pad(table.at(t, s).str(), width[s]);
            out << "\n";
        }
    }
    return 0;
}

int do_enumerate(const Options& opt, bool has_t, bool has_s, std::ostream& out) {
    Field f = make_field(opt);
    if (has_t != has_s)
        throw PreconditionViolated("--t and --s must be given together");
    if (opt.n < 1)
        throw DegreeTooSmall("--n must be >= 1");
    std::optional<std::pair<elem, elem>> filter;
    if (has_t)
        filter = std::make_pair(opt.t, opt.s);
    Budget budget = make_budget(opt);
    std::vector<Poly> polys =
        enumerate_monic_irreducibles(f, opt.n, filter, budget, opt.threads);
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["q"] = f.q();
        j["k"] = f.k();
        j["n"] = opt.n;
        j["modulus"] = f.modulus();
        if (filter) {
            j["t"] = filter->first;
            j["s"] = filter->second;
        }
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const Poly& p : polys)
            list.push_back(poly_to_string(p));
        j["polynomials"] = std::move(list);
        j["count"] = polys.size();
        out << j.dump(2) << "\n";
    } else if (opt.format == "csv") {
        out << meta_line(f) << " n=" << opt.n;
        if (filter)
            out << " t=" << filter->first << " s=" << filter->second;
        out << "\n";
        out << "polynomial\n";
        for (const Poly& p : polys)
            out << poly_to_string(p) << "\n";
    } else {
        out << meta_line(f) << " n=" << opt.n;
        if (filter)
            out << " t=" << filter->first << " s=" << filter->second;
        out << "\n";
        for (const Poly& p : polys)
            out << poly_to_string(p) << "\n";
        out << "count " << polys.size() << "\n";
    }
    return 0;
}

int do_verify(const Options& opt, bool format_given, std::ostream& out,
              std::ostream& err) {
    if (format_given && opt.format != "json") {
        err << "error: verification reports are JSON only\n";
        return 2;
    }
    Budget budget = make_budget(opt);
    VerifyReport report = verify_grid(opt.max_k, budget, opt.threads);
    out << report.to_json().dump(2) << "\n";
    return report.all_pass() ? 0 : 1;
}

int do_show_elements(const Options& opt, std::ostream& out) {
    Field f = make_field(opt);
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["q"] = f.q();
        j["k"] = f.k();
        j["modulus"] = f.modulus();
        j["modulus_text"] = bits_to_poly_string(f.modulus());
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (elem e : f.elements()) {
            nlohmann::ordered_json row;
            row["index"] = e;
            row["text"] = elem_pretty(f, e);
            list.push_back(std::move(row));
        }
        j["elements"] = std::move(list);
        out << j.dump(2) << "\n";
    } else if (opt.format == "csv") {
        out << meta_line(f) << " modulus_text=" << bits_to_poly_string(f.modulus())
            << "\n";
        out << "index,element\n";
        for (elem e : f.elements())
            out << e << "," << elem_pretty(f, e) << "\n";
    } else {
        out << meta_line(f) << " modulus_text=" << bits_to_poly_string(f.modulus())
            << "\n";
        for (elem e : f.elements())
            out << e << " " << elem_pretty(f, e) << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Exact counts of monic irreducible polynomials and field "
                 "elements over GF(2^k), classified by trace (coefficient of "
                 "x^(n-1)) and subtrace (coefficient of x^(n-2))."};
    app.name("subtrace");
    app.require_subcommand(1);
    Options opt;

    auto* q_opt = app.add_option("--q", opt.q,
                                 "base field size (a power of two up to 65536)");
    app.add_option("--k", opt.k, "base field exponent, q = 2^k (default 1)")
        ->check(CLI::Range(1u, 16u))
        ->excludes(q_opt);
    app.add_option("--modulus", opt.modulus,
                   "base field modulus as a decimal bit-vector, e.g. 7 for "
                   "x^2+x+1");
    app.add_option("--ext-modulus", opt.ext_modulus,
                   "extension modulus for element sweeps, as a coefficient "
                   "index list, e.g. [1,1,0,1]");
    auto* format_opt =
        app.add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--threads", opt.threads, "worker threads for sweeps")
        ->check(CLI::Range(1u, 256u));
    app.add_option("--max-points", opt.max_points,
                   "cap on q^n for element and tuple sweeps (can only be "
                   "lowered)")
        ->check(CLI::Range(std::uint64_t(1), kDefaultMaxPoints));
    app.add_option("--max-poly", opt.max_poly,
                   "cap on q^n for irreducible enumeration (can only be "
                   "lowered)")
        ->check(CLI::Range(std::uint64_t(1), kDefaultMaxPoly));

    auto* count = app.add_subcommand(
        "count", "one exact count for a (kind, n, t, s) cell");
    count->fallthrough();
    count->add_option("kind", opt.kind_str, "F, Fstar, or P")->required();
    count->add_option("--n", opt.n, "degree")->required();
    count->add_option("--t", opt.t, "trace element index")->required();
    count->add_option("--s", opt.s, "subtrace element index")->required();
    count->add_flag("--oracle", opt.with_oracle,
                    "also run the brute-force sweep and compare");

    auto* table = app.add_subcommand(
        "table", "full (t, s) grid of counts for one degree");
    table->fallthrough();
    table->add_option("kind", opt.kind_str, "F, Fstar, or P")->required();
    table->add_option("--n", opt.n, "degree")->required();

    auto* enumerate = app.add_subcommand(
        "enumerate", "list monic irreducibles, optionally filtered by (t, s)");
    enumerate->fallthrough();
    enumerate->add_option("--n", opt.n, "degree")->required();
    auto* enum_t = enumerate->add_option("--t", opt.t, "trace element index");
    auto* enum_s = enumerate->add_option("--s", opt.s, "subtrace element index");

    auto* verify = app.add_subcommand(
        "verify", "run the full verification grid and print a JSON report");
    verify->fallthrough();
    verify->add_option("--max-k", opt.max_k, "largest base field exponent")
        ->check(CLI::Range(1u, 16u));

    auto* show = app.add_subcommand(
        "show-elements", "print the index <-> polynomial correspondence");
    show->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*count)
            return do_count(opt, out);
        if (*table)
            return do_table(opt, out);
        if (*enumerate)
            return do_enumerate(opt, enum_t->count() > 0, enum_s->count() > 0,
                                out);
        if (*verify)
            return do_verify(opt, format_opt->count() > 0, out, err);
        if (*show)
            return do_show_elements(opt, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no command given\n";
    return 2;
}

}  // namespace subtrace
