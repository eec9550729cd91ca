/* Command-line front end: class enumeration and counting sweeps, local
 * Bessel identity checks, construction of the weight-10 oracle table, and
 * Maass relation verification of stored tables. */

#include "skmaass/bessel.hpp"
#include "skmaass/fourier_table.hpp"
#include "skmaass/qform.hpp"
#include "skmaass/rayclass.hpp"
#include "skmaass/sklift.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace skm;
using nlohmann::json;

namespace {

/* "1,3,5" / "1..12" / mixtures; throws std::domain_error on malformed input */
std::vector<long> parse_list(const std::string& text, const std::string& what) {
    std::vector<long> out;
    std::size_t pos = 0;
    auto item_error = [&what](const std::string& item) {
        throw std::domain_error(what + ": malformed list item '" + item + "'");
    };
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        pos = comma + 1;
        const std::size_t dots = item.find("..");
        try {
            std::size_t used = 0;
            if (dots == std::string::npos) {
                const long v = std::stol(item, &used);
                if (used != item.size())
                    item_error(item);
                out.push_back(v);
            } else {
                const std::string lo_s = item.substr(0, dots), hi_s = item.substr(dots + 2);
                const long lo = std::stol(lo_s, &used);
                if (used != lo_s.size())
                    item_error(item);
                const long hi = std::stol(hi_s, &used);
                if (used != hi_s.size())
                    item_error(item);
                if (lo > hi)
                    item_error(item);
                for (long v = lo; v <= hi; ++v)
                    out.push_back(v);
            }
        } catch (const std::domain_error&) {
            throw;
        } catch (const std::exception&) {
            item_error(item);
        }
    }
    if (out.empty())
        throw std::domain_error(what + ": empty list");
    return out;
}

std::string form_str(const QForm& f) {
    std::ostringstream ss;
    ss << f;
    return ss.str();
}

/* ---------------------------------------------------------------- classes */

struct ClassesOpts {
    long d = 0, m = 1, l = 1, n = 1;
    bool formula_only = false, enumerate_only = false;
    std::string format = "human";
};

int run_classes(const ClassesOpts& o) {
    json j;
    j["command"] = "classes";
    j["d"] = o.d;
    j["m"] = o.m;
    j["l"] = o.l;
    j["n"] = o.n;

    std::optional<Int> formula;
    std::optional<ClassSet> classes;
    if (!o.enumerate_only)
        formula = count_classes_formula(o.d, o.m, o.l, o.n);
    if (!o.formula_only)
        classes = enumerate_classes(o.d, o.m, o.l, o.n);

    const bool ok =
        !formula || !classes || *formula == Int(long(classes->representatives.size()));
    if (formula)
        j["formula"] = formula->get_str();
    if (classes) {
        j["enumerated"] = classes->representatives.size();
        json reps = json::array();
        for (const QForm& f : classes->representatives)
            reps.push_back({f.a().get_str(), f.b().get_str(), f.c().get_str()});
        j["representatives"] = reps;
    }
    j["ok"] = ok;

    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "d,m,l,n,formula,enumerated,ok\n";
        std::cout << o.d << "," << o.m << "," << o.l << "," << o.n << ","
                  << (formula ? formula->get_str() : "") << ","
                  << (classes ? std::to_string(classes->representatives.size()) : "") << ","
                  << (ok ? 1 : 0) << "\n";
    } else {
        std::cout << "d " << o.d << "  M " << o.m << "  L " << o.l << "  N " << o.n << "\n";
        if (formula)
            std::cout << "formula count: " << *formula << "\n";
        if (classes) {
            std::cout << "representatives (" << classes->representatives.size() << "):\n";
            for (const QForm& f : classes->representatives)
                std::cout << "  " << f << "\n";
        }
        std::cout << "status: " << (ok ? "ok" : "MISMATCH") << "\n";
    }
    return ok ? 0 : 1;
}

/* ------------------------------------------------------------------ sweep */

struct SweepOpts {
    std::string d = "-3,-4,-7,-8,-11,-15,-19,-20,-23,-24";
    std::string m = "1..3", l = "1..2", n = "1..12";
    std::string format = "human";
};

struct SweepRow {
    long d, m, l, n;
    Int formula, enumerated, h1, raycl;
    bool formula_ok = false, h1_ok = false, equiv_ok = false, raycl_ok = false;
    std::string error;
    bool ok() const {
        return error.empty() && formula_ok && h1_ok && equiv_ok && raycl_ok;
    }
};

SweepRow sweep_point(long d, long m, long l, long n) {
    SweepRow row{d, m, l, n, 0, 0, 0, 0};
    try {
        row.formula = count_classes_formula(d, m, l, n);
        const ClassSet full = enumerate_classes(d, m, l, n);
        row.enumerated = long(full.representatives.size());
        row.formula_ok = row.formula == row.enumerated;

        const ClassSet h1 = h1_classes(d, m, l, n);
        row.h1 = long(h1.representatives.size());
        row.raycl = raycl_size(d, Int(m) * n);
        row.h1_ok = row.h1 == row.raycl;

        /* the three equivalent surjectivity conditions must agree */
        const bool inert = is_phi_surjective(d, m, n);
        const bool exhausts = row.h1 == row.enumerated;
        const bool counts_match =
            count_classes_formula(d, Int(m) * n, l, 1) == count_classes_formula(d, m, l, n);
        row.equiv_ok = inert == exhausts && exhausts == counts_match;

        row.raycl_ok = row.raycl == class_number(Int(d) * m * m * n * n);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

int run_sweep(const SweepOpts& o) {
    const auto ds = parse_list(o.d, "sweep -d");
    const auto ms = parse_list(o.m, "sweep -M");
    const auto ls = parse_list(o.l, "sweep -L");
    const auto ns = parse_list(o.n, "sweep -N");
    for (long d : ds)
        if (!is_fundamental_discriminant(d) || d >= 0)
            throw std::domain_error("sweep: d = " + std::to_string(d) +
                                    " is not a negative fundamental discriminant");

    struct Point {
        long d, m, l, n;
    };
    std::vector<Point> points;
    for (long d : ds)
        for (long m : ms)
            for (long l : ls)
                for (long n : ns)
                    points.push_back({d, m, l, n});

    std::vector<SweepRow> rows(points.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(points.size()); ++i)
        rows[i] = sweep_point(points[i].d, points[i].m, points[i].l, points[i].n);

    long failures = 0;
    for (const SweepRow& r : rows)
        failures += r.ok() ? 0 : 1;

    if (o.format == "json") {
        json j;
        j["command"] = "sweep";
        j["points"] = json::array();
        for (const SweepRow& r : rows) {
            json p;
            p["d"] = r.d;
            p["m"] = r.m;
            p["l"] = r.l;
            p["n"] = r.n;
            p["formula"] = r.formula.get_str();
            p["enumerated"] = r.enumerated.get_str();
            p["h1"] = r.h1.get_str();
            p["rayclass"] = r.raycl.get_str();
            p["ok"] = r.ok();
            if (!r.error.empty())
                p["error"] = r.error;
            j["points"].push_back(p);
        }
        j["failures"] = failures;
        j["ok"] = failures == 0;
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "d,m,l,n,formula,enumerated,h1,rayclass,formula_ok,h1_ok,equiv_ok,"
                     "rayclass_ok,ok\n";
        for (const SweepRow& r : rows)
            std::cout << r.d << "," << r.m << "," << r.l << "," << r.n << ","
                      << r.formula.get_str() << "," << r.enumerated.get_str() << ","
                      << r.h1.get_str() << "," << r.raycl.get_str() << "," << r.formula_ok << ","
                      << r.h1_ok << "," << r.equiv_ok << "," << r.raycl_ok << "," << r.ok()
                      << "\n";
    } else {
        std::cout << "    d  M  L   N  formula  enum    h1  raycl  status\n";
        for (const SweepRow& r : rows) {
            std::ostringstream line;
            line.width(5);
            line << r.d;
            line << "  " << r.m << "  " << r.l;
            line.width(4);
            line << r.n;
            line.width(9);
            line << r.formula.get_str();
            line.width(6);
            line << r.enumerated.get_str();
            line.width(6);
            line << r.h1.get_str();
            line.width(7);
            line << r.raycl.get_str();
            line << "  " << (r.ok() ? "ok" : "FAIL");
            std::cout << line.str() << "\n";
            if (!r.error.empty())
                std::cout << "        " << r.error << "\n";
        }
        std::cout << "sweep: " << rows.size() << " points, "
                  << (failures ? std::to_string(failures) + " failures" : "all checks passed")
                  << "\n";
    }
    return failures == 0 ? 0 : 1;
}

/* -------------------------------------------------------- bessel-identity */

struct BesselOpts {
    long lm_max = 200;
    std::string n2 = "1,2,3,4,6,12";
    std::string format = "human";
};

int run_bessel(const BesselOpts& o) {
    if (o.lm_max < 1)
        throw std::domain_error("bessel-identity: --lm-max must be at least 1");
    const auto n2s = parse_list(o.n2, "bessel-identity --n2");
    for (long n2 : n2s)
        if (n2 < 1)
            throw std::domain_error("bessel-identity: N2 values must be positive");

    struct Cell {
        long n2;
        long checked = 0, failed = 0;
    };
    std::vector<Cell> cells;
    for (long n2 : n2s)
        cells.push_back({n2});

#pragma omp parallel for schedule(dynamic)
    for (long ci = 0; ci < long(cells.size()); ++ci) {
        Cell& cell = cells[ci];
        for (long l = 1; l <= o.lm_max; ++l)
            for (long m = 1; l * m <= o.lm_max; ++m) {
                ++cell.checked;
                if (!maass_identity_check(l, m, cell.n2))
                    ++cell.failed;
            }
    }

    long checked = 0, failed = 0;
    for (const Cell& c : cells) {
        checked += c.checked;
        failed += c.failed;
    }

    if (o.format == "json") {
        json j;
        j["command"] = "bessel-identity";
        j["lm_max"] = o.lm_max;
        j["cells"] = json::array();
        for (const Cell& c : cells)
            j["cells"].push_back({{"n2", c.n2}, {"checked", c.checked}, {"failed", c.failed}});
        j["checked"] = checked;
        j["failed"] = failed;
        j["ok"] = failed == 0;
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "n2,checked,failed\n";
        for (const Cell& c : cells)
            std::cout << c.n2 << "," << c.checked << "," << c.failed << "\n";
    } else {
        std::cout << "local Bessel identity over L*M <= " << o.lm_max << "\n";
        for (const Cell& c : cells)
            std::cout << "  N2 " << c.n2 << ": " << c.checked << " identities, " << c.failed
                      << " failed\n";
        std::cout << "status: " << (failed ? "FAIL" : "all hold") << "\n";
    }
    return failed == 0 ? 0 : 1;
}

/* ------------------------------------------------------------------ chi10 */

struct Chi10Opts {
    long bound = 10;
    std::string out = "-";
};

int run_chi10(const Chi10Opts& o) {
    const FourierTable t = igusa_chi10(o.bound);
    if (o.out == "-") {
        write_sfc(std::cout, t);
    } else {
        write_sfc_file(o.out, t);
        std::cout << "chi10: bound " << t.bound << ", " << t.coeffs.size()
                  << " coefficients, wrote " << o.out << "\n";
    }
    return 0;
}

/* ----------------------------------------------------------- verify-maass */

struct VerifyOpts {
    std::string in;
    bool level_mode = false;
    std::string format = "human";
};

int run_verify(const VerifyOpts& o) {
    const FourierTable t = read_sfc_file(o.in);
    const MaassVerifyReport rep = verify_maass_table(t, o.level_mode);

    if (o.format == "json") {
        json j;
        j["command"] = "verify-maass";
        j["file"] = o.in;
        j["mode"] = o.level_mode ? "level" : "classical";
        j["k"] = t.k;
        j["n1"] = t.n1.get_str();
        j["n2"] = t.n2.get_str();
        j["bound"] = t.bound;
        j["stored"] = t.coeffs.size();
        j["relations_checked"] = rep.relations_checked;
        j["relations_failed"] = rep.relations_failed;
        j["relations_skipped_oob"] = rep.relations_skipped_oob;
        j["relations_skipped_hypothesis"] = rep.relations_skipped_hypothesis;
        j["invariance_checked"] = rep.invariance_checked;
        j["invariance_failed"] = rep.invariance_failed;
        j["jacobi_checked"] = rep.jacobi_checked;
        j["jacobi_failed"] = rep.jacobi_failed;
        j["ok"] = rep.ok();
        if (rep.first_failure)
            j["first_failure"] = form_str(*rep.first_failure);
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "file,mode,relations_checked,relations_failed,invariance_checked,"
                     "invariance_failed,jacobi_checked,jacobi_failed,ok\n";
        std::cout << o.in << "," << (o.level_mode ? "level" : "classical") << ","
                  << rep.relations_checked << "," << rep.relations_failed << ","
                  << rep.invariance_checked << "," << rep.invariance_failed << ","
                  << rep.jacobi_checked << "," << rep.jacobi_failed << "," << rep.ok() << "\n";
    } else {
        std::cout << "table: k " << t.k << ", levels (" << t.n1 << ", " << t.n2 << "), bound "
                  << t.bound << ", " << t.coeffs.size() << " stored coefficients\n";
        std::cout << "mode: " << (o.level_mode ? "level" : "classical") << "\n";
        std::cout << "relations: " << rep.relations_checked << " checked, "
                  << rep.relations_failed << " failed, " << rep.relations_skipped_oob
                  << " out of bound, " << rep.relations_skipped_hypothesis
                  << " hypothesis-skipped\n";
        std::cout << "invariance: " << rep.invariance_checked << " checked, "
                  << rep.invariance_failed << " failed\n";
        std::cout << "column consistency: " << rep.jacobi_checked << " checked, "
                  << rep.jacobi_failed << " failed (" << rep.jacobi_classes
                  << " discriminant classes)\n";
        if (rep.first_failure)
            std::cout << "first failing T: " << *rep.first_failure << "\n";
        std::cout << "status: " << (rep.ok() ? "pass" : "FAIL") << "\n";
    }
    return rep.ok() ? 0 : 1;
}

void add_format_flag(CLI::App* cmd, std::string& target) {
    cmd->add_option("--format", target, "output format")
        ->check(CLI::IsMember({"human", "csv", "json"}))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for quadratic form classes, ray class numbers, "
                 "and Maass relations of degree-2 cusp forms"};
    app.require_subcommand(1);

    ClassesOpts classes_opts;
    CLI::App* classes = app.add_subcommand(
        "classes", "enumerate and count congruence classes of quadratic forms");
    classes->add_option("-d", classes_opts.d, "fundamental discriminant (negative)")
        ->required();
    classes->add_option("-M", classes_opts.m, "conductor factor M >= 1")
        ->capture_default_str();
    classes->add_option("-L", classes_opts.l, "content L >= 1")->capture_default_str();
    classes->add_option("-N", classes_opts.n, "level N >= 1")->capture_default_str();
    CLI::Option* fo = classes->add_flag("--formula-only", classes_opts.formula_only,
                                        "print the closed-form count only");
    classes
        ->add_flag("--enumerate", classes_opts.enumerate_only,
                   "print representatives only, skip the formula cross-check")
        ->excludes(fo);
    add_format_flag(classes, classes_opts.format);

    SweepOpts sweep_opts;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "grid sweep: formula vs enumeration, ray class sizes, surjectivity");
    sweep->add_option("-d", sweep_opts.d, "discriminant list, e.g. -3,-4,-20")
        ->capture_default_str();
    sweep->add_option("-M", sweep_opts.m, "M list or range, e.g. 1..3")->capture_default_str();
    sweep->add_option("-L", sweep_opts.l, "L list or range")->capture_default_str();
    sweep->add_option("-N", sweep_opts.n, "N list or range")->capture_default_str();
    add_format_flag(sweep, sweep_opts.format);

    BesselOpts bessel_opts;
    CLI::App* bessel = app.add_subcommand(
        "bessel-identity", "verify the local Bessel summation identity on a grid");
    bessel->add_option("--lm-max", bessel_opts.lm_max, "check all pairs with L*M <= this")
        ->capture_default_str();
    bessel->add_option("--n2", bessel_opts.n2, "N2 list, e.g. 1,2,3,4,6,12")
        ->capture_default_str();
    add_format_flag(bessel, bessel_opts.format);

    Chi10Opts chi10_opts;
    CLI::App* chi10 = app.add_subcommand(
        "chi10", "construct the weight-10 cusp form table from theta constants");
    chi10->add_option("--bound", chi10_opts.bound, "completeness bound (>= 2)")
        ->capture_default_str();
    chi10->add_option("-o,--out", chi10_opts.out, "output file ('-' for stdout)")
        ->capture_default_str();

    VerifyOpts verify_opts;
    CLI::App* verify =
        app.add_subcommand("verify-maass", "verify the Maass relations of a stored table");
    verify->add_option("file", verify_opts.in, "SFC input file")->required();
    verify->add_flag("--level-N", verify_opts.level_mode,
                     "use the level-carrying relation at the canonical scale");
    add_format_flag(verify, verify_opts.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(classes))
            return run_classes(classes_opts);
        if (app.got_subcommand(sweep))
            return run_sweep(sweep_opts);
        if (app.got_subcommand(bessel))
            return run_bessel(bessel_opts);
        if (app.got_subcommand(chi10))
            return run_chi10(chi10_opts);
        return run_verify(verify_opts);
    } catch (const sfc_parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
