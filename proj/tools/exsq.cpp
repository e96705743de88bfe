// exsq — exact exterior-square toolkit for GL_n.
//
// Subcommands: wedge, membership, exterior-number, decompose, diagram,
// selftest, random. Matrix files are JSON (see json_io.hpp); all outputs
// are byte-deterministic given flags and seed.
//
// Exit codes: 0 ok/accept, 1 reject/fail, 2 parse error, 3 domain error,
// 4 internal oracle disagreement.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "exsq/exsq.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitDisagreement = 4;

exsq::SquareMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw exsq::ParseError("cannot open input file '" + path + "'");
    exsq::Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw exsq::ParseError("bad JSON in '" + path + "': " + e.what());
    }
    return exsq::matrix_from_json(j);
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw exsq::ParseError("cannot open output file '" + out_path + "'");
    out << text;
}

void write_json(const std::string& out_path, const exsq::Json& j) {
    write_output(out_path, j.dump(2) + "\n");
}

struct MembershipArgs {
    std::string input;
    std::string output;
    std::optional<std::uint64_t> modulus;
    bool second_form = false;
    bool equations_only = false;
    bool full_report = false;
    bool no_theta_det = false;
    bool trace = false;
    std::string via = "direct";
};

int run_membership(const MembershipArgs& args) {
    const exsq::SquareMatrix g = load_matrix(args.input);
    exsq::MembershipOptions opts;
    opts.require_invertible = !args.equations_only;
    opts.full_report = args.full_report;
    opts.compute_theta_det = !args.no_theta_det;
    if (args.trace) opts.trace = &std::cerr;
    if (args.via == "diagram")
        opts.evaluator = [](const exsq::SquareMatrix& m, const exsq::Pair& A,
                            const exsq::Pair& C, const exsq::Quad& H) {
            return exsq::diagram_exterior_number(m, A, C, H);
        };
    else if (args.via != "direct")
        throw exsq::ParseError("--via must be 'direct' or 'diagram'");

    exsq::MembershipReport report;
    if (args.modulus)
        report = exsq::congruence_membership(g, exsq::BigInt(*args.modulus), opts);
    else
        report = exsq::membership(g, opts);

    exsq::Json j = exsq::report_to_json(report, args.full_report);
    bool disagreement = false;
    if (args.second_form) {
        const exsq::SquareMatrix* checked = &g;
        std::optional<exsq::SquareMatrix> reduced;
        if (args.modulus) {
            reduced = exsq::reduce_mod(g, exsq::BigInt(*args.modulus));
            checked = &*reduced;
        }
        const auto second = exsq::second_form_membership(*checked);
        exsq::Json sj;
        sj["verdict"] = second.accepted ? "accept" : "reject";
        if (second.alpha) sj["alpha"] = exsq::theta_to_json(*second.alpha);
        j["second_form"] = std::move(sj);
        disagreement = second.accepted != report.accepted;
    }
    write_json(args.output, j);
    if (disagreement) {
        std::cerr << "error: primary and second-form verdicts disagree\n";
        return kExitDisagreement;
    }
    return report.accepted ? kExitOk : kExitReject;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact exterior-square toolkit for GL_n"};
    app.require_subcommand(1);

    // wedge
    std::string wedge_in, wedge_out;
    int wedge_power = 2;
    auto* cmd_wedge = app.add_subcommand("wedge", "exterior power of a plain matrix file");
    cmd_wedge->add_option("-i,--input", wedge_in, "input matrix file (plain indexing)")
        ->required();
    cmd_wedge->add_option("-p,--power", wedge_power, "exterior power m (default 2)");
    cmd_wedge->add_option("-o,--output", wedge_out, "output file (default stdout)");

    // membership
    MembershipArgs m_args;
    auto* cmd_membership =
        app.add_subcommand("membership", "decide exterior-square scheme membership");
    cmd_membership->add_option("-i,--input", m_args.input, "input matrix file (wedge2 indexing)")
        ->required();
    cmd_membership->add_option("-o,--output", m_args.output, "output file (default stdout)");
    std::uint64_t mod_value = 0;
    auto* mod_opt = cmd_membership->add_option(
        "--mod", mod_value, "test the equations modulo this integer (input must be over z)");
    cmd_membership->add_flag("--second-form", m_args.second_form,
                             "also run the quadratic-form equation system and compare verdicts");
    cmd_membership->add_flag("--equations-only", m_args.equations_only,
                             "skip the invertibility precondition");
    cmd_membership->add_flag("--full-report", m_args.full_report,
                             "sweep all constraints instead of stopping at the first violation");
    cmd_membership->add_flag("--no-theta-det", m_args.no_theta_det,
                             "skip recording det(theta) (it is expensive for large n)");
    cmd_membership->add_flag("--trace", m_args.trace, "log every checked constraint to stderr");
    cmd_membership->add_option("--via", m_args.via,
                               "exterior-number route: direct | diagram (default direct)");

    // exterior-number
    std::string en_in, en_out, en_a, en_c, en_h, en_via = "direct";
    auto* cmd_en = app.add_subcommand("exterior-number", "one a^H_{A,C}(g) query");
    cmd_en->add_option("-i,--input", en_in, "input matrix file (wedge2 indexing)")->required();
    cmd_en->add_option("-A", en_a, "row pair, e.g. 23")->required();
    cmd_en->add_option("-C", en_c, "row pair, e.g. 24")->required();
    cmd_en->add_option("-H", en_h, "4-set, e.g. 1234")->required();
    cmd_en->add_option("--via", en_via, "direct | diagram (default direct)");
    cmd_en->add_option("-o,--output", en_out, "output file (default stdout)");

    // decompose
    int dc_n = 0, dc_i = 0, dc_j = 0;
    std::string dc_xi = "1", dc_ring = "z", dc_out;
    auto* cmd_decompose = app.add_subcommand(
        "decompose", "write a wedged transvection as a product of elementary transvections");
    cmd_decompose->add_option("-n", dc_n, "rank of the base group")->required();
    cmd_decompose->add_option("-i", dc_i, "row label")->required();
    cmd_decompose->add_option("-j", dc_j, "column label")->required();
    cmd_decompose->add_option("--xi", dc_xi, "transvection parameter (default 1)");
    cmd_decompose->add_option("--ring", dc_ring, "coefficient ring (default z)");
    cmd_decompose->add_option("-o,--output", dc_out, "output file (default stdout)");

    // diagram
    int dg_n = 0;
    std::string dg_format = "ascii", dg_square, dg_out;
    std::vector<int> dg_paths;
    bool dg_signs = false;
    auto* cmd_diagram = app.add_subcommand("diagram", "emit the weight diagram");
    cmd_diagram->add_option("-n", dg_n, "rank of the base group")->required();
    cmd_diagram->add_option("-f,--format", dg_format, "ascii | dot | svg (default ascii)");
    cmd_diagram->add_option("--path", dg_paths, "highlight the chain through a letter (repeatable)");
    cmd_diagram->add_option("--square", dg_square, "highlight the elementary square of a 4-set");
    cmd_diagram->add_flag("--signs", dg_signs, "annotate the highlighted square's pairing signs");
    cmd_diagram->add_option("-o,--output", dg_out, "output file (default stdout)");

    // selftest
    std::string st_level = "quick";
    std::uint64_t st_seed = 2024;
    auto* cmd_selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
    cmd_selftest->add_option("--level", st_level, "quick | full (default quick)");
    cmd_selftest->add_option("--seed", st_seed, "PRNG seed (default 2024)");

    // random
    int rd_n = 4, rd_length = 16;
    std::string rd_ring = "zmod:97", rd_kind = "plain", rd_out;
    std::uint64_t rd_seed = 1;
    auto* cmd_random = app.add_subcommand("random", "emit a seeded test matrix (PRNG: mt19937_64)");
    cmd_random->add_option("-n", rd_n, "rank (default 4)");
    cmd_random->add_option("--ring", rd_ring, "coefficient ring (default zmod:97)");
    cmd_random->add_option("--seed", rd_seed, "PRNG seed (default 1)");
    cmd_random->add_option("--kind", rd_kind,
                           "plain | invertible | elementary | member (default plain)");
    cmd_random->add_option("--length", rd_length,
                           "transvection count for --kind elementary (default 16)");
    cmd_random->add_option("-o,--output", rd_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (cmd_wedge->parsed()) {
            const exsq::SquareMatrix x = load_matrix(wedge_in);
            if (x.indexing().kind() != exsq::IndexingKind::Plain)
                throw exsq::ShapeMismatch("wedge needs a plain-indexed input");
            write_json(wedge_out, exsq::matrix_to_json(exsq::wedge(wedge_power, x)));
            return kExitOk;
        }
        if (cmd_membership->parsed()) {
            if (*mod_opt) m_args.modulus = mod_value;
            return run_membership(m_args);
        }
        if (cmd_en->parsed()) {
            const exsq::SquareMatrix g = load_matrix(en_in);
            const auto A = exsq::IndexSet::parse(en_a);
            const auto C = exsq::IndexSet::parse(en_c);
            const auto H = exsq::IndexSet::parse(en_h);
            exsq::Scalar value = exsq::Scalar::zero(g.ring());
            if (en_via == "direct")
                value = exsq::exterior_number(g, A, C, H);
            else if (en_via == "diagram")
                value = exsq::diagram_exterior_number(g, A, C, H);
            else
                throw exsq::ParseError("--via must be 'direct' or 'diagram'");
            exsq::Json j;
            j["A"] = A.str();
            j["C"] = C.str();
            j["H"] = H.str();
            j["via"] = en_via;
            j["value"] = value.str();
            write_json(en_out, j);
            return kExitOk;
        }
        if (cmd_decompose->parsed()) {
            const auto ring = exsq::RingTag::parse(dc_ring);
            const auto xi = exsq::Scalar::parse(ring, dc_xi);
            const auto factors = exsq::decompose_wedge2(dc_n, dc_i, dc_j, xi);
            exsq::Json j;
            j["n"] = dc_n;
            j["i"] = dc_i;
            j["j"] = dc_j;
            j["xi"] = xi.str();
            j["ring"] = ring.str();
            j["factors"] = exsq::decomposition_to_json(dc_n, factors);
            j["verified"] = exsq::verify_decomposition(dc_n, dc_i, dc_j, xi);
            write_json(dc_out, j);
            return kExitOk;
        }
        if (cmd_diagram->parsed()) {
            const auto format = exsq::parse_render_format(dg_format);
            exsq::RenderHighlights highlights;
            highlights.paths = dg_paths;
            if (!dg_square.empty()) highlights.square = exsq::IndexSet::parse(dg_square);
            highlights.signs = dg_signs;
            const exsq::WeightDiagram d(dg_n);
            write_output(dg_out, exsq::render(d, format, highlights));
            return kExitOk;
        }
        if (cmd_selftest->parsed()) {
            exsq::SelftestLevel level;
            if (st_level == "quick")
                level = exsq::SelftestLevel::Quick;
            else if (st_level == "full")
                level = exsq::SelftestLevel::Full;
            else
                throw exsq::ParseError("--level must be 'quick' or 'full'");
            const auto results = exsq::run_selftest(level, st_seed);
            int failed = 0;
            for (const auto& r : results) {
                std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.passed && !r.detail.empty()) std::cout << " — " << r.detail;
                std::cout << "\n";
                if (!r.passed) ++failed;
            }
            std::cout << (failed == 0 ? "all " : "FAILED: ") << results.size() - failed << "/"
                      << results.size() << " checks passed (level " << st_level << ", seed "
                      << st_seed << ")\n";
            return failed == 0 ? kExitOk : kExitReject;
        }
        if (cmd_random->parsed()) {
            const auto ring = exsq::RingTag::parse(rd_ring);
            exsq::SquareMatrix m(ring, exsq::Indexing::plain(rd_n));
            if (rd_kind == "plain")
                m = exsq::random_matrix(rd_n, ring, rd_seed);
            else if (rd_kind == "invertible")
                m = exsq::random_invertible(rd_n, ring, rd_seed);
            else if (rd_kind == "elementary")
                m = exsq::random_elementary(rd_n, rd_length, ring, rd_seed);
            else if (rd_kind == "member")
                m = exsq::wedge(2, exsq::random_invertible(rd_n, ring, rd_seed));
            else
                throw exsq::ParseError("--kind must be plain | invertible | elementary | member");
            write_json(rd_out, exsq::matrix_to_json(m));
            return kExitOk;
        }
    } catch (const exsq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const exsq::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitDisagreement;
    }
    return kExitOk;
}
