// dpx: exact invariants of Cox rings of del Pezzo surfaces.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dpx/betti.hpp"
#include "dpx/json_io.hpp"
#include "dpx/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct GlobalOptions {
    std::string format = "text";
    std::uint64_t seed = 42;
    int threads = 1;
    std::string memory = "";
    std::string output = "";
};

std::uint64_t parse_memory(const std::string& text) {
    if (text.empty()) {
        if (const char* env = std::getenv("DPX_MEMORY_BUDGET")) return parse_memory(env);
        return 4ull << 30;
    }
    char suffix = text.back();
    std::uint64_t mult = 1;
    std::string digits = text;
    if (suffix == 'K' || suffix == 'k') mult = 1ull << 10;
    if (suffix == 'M' || suffix == 'm') mult = 1ull << 20;
    if (suffix == 'G' || suffix == 'g') mult = 1ull << 30;
    if (mult != 1) digits = text.substr(0, text.size() - 1);
    return mult * std::stoull(digits);
}

dpx::EnumerationOptions enum_options(const GlobalOptions& g) {
    dpx::EnumerationOptions opt;
    opt.memory_budget = parse_memory(g.memory);
    opt.threads = g.threads;
    return opt;
}

void emit(const GlobalOptions& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.output, std::ios::trunc);
        out << text;
    }
}

dpx::DivisorClass class_arg(const std::string& text, int r) {
    dpx::DivisorClass d = dpx::parse_class(text);
    if (d.r != r)
        throw CLI::ValidationError("--class", "class has " + std::to_string(int(d.r)) +
                                                  " exceptional coefficients, --r is " +
                                                  std::to_string(r));
    return d;
}

std::string csv_class_row(const dpx::DivisorClass& d) {
    std::ostringstream os;
    os << d.a;
    for (int i = 0; i < d.r; ++i) os << "," << d.b[i];
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact syzygetic invariants of Cox rings of del Pezzo surfaces"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--format", g.format, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--seed", g.seed, "seed for point configurations (default 42)");
    app.add_option("--threads", g.threads, "worker threads for slice enumeration");
    app.add_option("--memory", g.memory,
                   "memory budget for enumeration, e.g. 4G (env DPX_MEMORY_BUDGET)");
    app.add_option("-o,--output", g.output, "write the report to a file");

    // --- curves ---
    auto* curves = app.add_subcommand("curves", "distinguished curve classes");
    int curves_r = 4;
    std::string kind = "minus-one";
    bool count_only = false;
    curves->add_option("--r", curves_r, "number of blown-up points")->required();
    curves->add_option("--kind", kind, "minus-one, root, conic, cubic or generators")
        ->check(CLI::IsMember({"minus-one", "root", "conic", "cubic", "generators"}));
    curves->add_flag("--count", count_only, "print only the count");

    // --- h0 ---
    auto* h0cmd = app.add_subcommand("h0", "h^0 of a divisor class");
    int h0_r = 5;
    std::string h0_class;
    bool h0_trace = false;
    h0cmd->add_option("--r", h0_r)->required();
    h0cmd->add_option("--class", h0_class, "class as \"a;b1,...,br\"")->required();
    h0cmd->add_flag("--trace", h0_trace, "print the reduction steps");

    // --- hilbert ---
    auto* hilb = app.add_subcommand("hilbert", "hilbert function data");
    int hilb_r = 5;
    int hilb_t = -1;
    bool hilb_poly = false;
    hilb->add_option("--r", hilb_r)->required();
    hilb->add_option("--t", hilb_t, "anticanonical degree of the slice");
    hilb->add_flag("--polynomial", hilb_poly, "emit the hilbert polynomial and B_j");

    // --- orbit ---
    auto* orbit = app.add_subcommand("orbit", "weyl orbit of a class");
    int orbit_r = 5;
    std::string orbit_class;
    std::uint64_t orbit_cap = 1u << 20;
    orbit->add_option("--r", orbit_r)->required();
    orbit->add_option("--class", orbit_class)->required();
    orbit->add_option("--cap", orbit_cap, "orbit size cap");

    // --- points ---
    auto* points = app.add_subcommand("points", "certified general point configuration");
    int points_r = 5;
    int points_height = 100;
    points->add_option("--r", points_r)->required();
    points->add_option("--height", points_height, "coordinate height bound");

    // --- betti ---
    auto* betti = app.add_subcommand("betti", "multigraded betti numbers");
    int betti_r = 5;
    int betti_i = -1;
    std::string betti_class;
    bool betti_diagram_flag = false;
    bool betti_stress = false;
    betti->add_option("--r", betti_r)->required();
    betti->add_option("--i", betti_i, "homological index");
    betti->add_option("--class", betti_class, "multidegree as \"a;b1,...,br\"");
    betti->add_flag("--diagram", betti_diagram_flag, "assemble the full diagram (r = 4, 5)");
    betti->add_flag("--stress", betti_stress,
                    "recompute the S_5 middle cells directly by koszul homology");

    // --- verify-paper ---
    auto* verify = app.add_subcommand("verify-paper", "run the published-table checks");
    std::string verify_r = "all";
    std::string verify_section;
    verify->add_option("--r", verify_r, "surface selector: all or 4..8");
    verify->add_option("--section", verify_section,
                       "curves, hilbert, polynomial, degree-genus, bj, regpd, ideal, "
                       "betti, index, pfaffian or properties");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        std::ostringstream out;
        if (curves->parsed()) {
            dpx::Surface s(curves_r);
            const auto& inv = dpx::inventory(s);
            std::vector<dpx::DivisorClass> list;
            if (kind == "minus-one") list = inv.minus_one_curves();
            if (kind == "root") list = inv.roots();
            if (kind == "conic") list = inv.conics();
            if (kind == "cubic") list = inv.twisted_cubics();
            if (kind == "generators") {
                for (const auto& slot : dpx::cox_generators(s)) list.push_back(slot.cls);
            }
            if (count_only) {
                out << list.size() << "\n";
            } else if (g.format == "json") {
                dpx::json j{{"r", curves_r}, {"kind", kind}, {"count", list.size()}};
                j["classes"] = dpx::json::array();
                for (const auto& d : list) j["classes"].push_back(dpx::to_json(d));
                out << j.dump(2) << "\n";
            } else if (g.format == "csv") {
                out << "a";
                for (int i = 1; i <= curves_r; ++i) out << ",b" << i;
                out << "\n";
                for (const auto& d : list) out << csv_class_row(d) << "\n";
            } else {
                out << "r=" << curves_r << " " << kind << ": " << list.size()
                    << " classes\n";
                for (const auto& d : list) out << "  " << d << "\n";
            }
        } else if (h0cmd->parsed()) {
            dpx::DivisorClass d = class_arg(h0_class, h0_r);
            dpx::ReductionTrace trace;
            std::int64_t value = dpx::h0(d, &trace);
            if (g.format == "json") {
                dpx::json j{{"class", dpx::to_json(d)}, {"h0", value}};
                if (h0_trace) {
                    j["trace"] = dpx::json::array();
                    for (const auto& step : trace.steps)
                        j["trace"].push_back(
                            dpx::json{{"before", dpx::to_json(step.before)},
                                      {"subtracted", dpx::to_json(step.subtracted)}});
                    j["terminal"] = dpx::to_json(trace.terminal);
                    j["terminal_kind"] = trace.terminal_kind == dpx::TerminalKind::nef
                                             ? "nef"
                                             : "negative-degree";
                }
                out << j.dump(2) << "\n";
            } else {
                out << value << "\n";
                if (h0_trace) {
                    for (const auto& step : trace.steps)
                        out << "  " << step.before << "  -  " << step.subtracted << "\n";
                    out << "  terminal " << trace.terminal << " ("
                        << (trace.terminal_kind == dpx::TerminalKind::nef
                                ? "nef"
                                : "negative-degree")
                        << ")\n";
                }
            }
        } else if (hilb->parsed()) {
            dpx::Surface s(hilb_r);
            if (hilb_poly) {
                dpx::HilbertData hd = dpx::hilbert_data(s, enum_options(g));
                if (g.format == "json") {
                    dpx::json j{{"r", hilb_r},
                                {"polynomial", dpx::to_json(hd.polynomial)},
                                {"d", hd.d.get_str()},
                                {"g", hd.g.get_str()},
                                {"reg", hd.reg},
                                {"pd", hd.pd}};
                    j["B"] = dpx::json::array();
                    for (const auto& b : hd.B) j["B"].push_back(b.get_str());
                    out << j.dump(2) << "\n";
                } else {
                    out << "P(t) coefficients (ascending):";
                    for (const auto& c : hd.polynomial.coeffs)
                        out << " " << dpx::to_string(c);
                    out << "\nd = " << hd.d << ", g = " << hd.g << ", reg = " << hd.reg
                        << ", pd = " << hd.pd << "\nB_j:";
                    for (const auto& b : hd.B) out << " " << b;
                    out << "\n";
                }
            } else {
                if (hilb_t < 0) throw CLI::ValidationError("hilbert", "--t is required");
                dpx::Enumerator en(s, enum_options(g));
                if (g.format == "json") {
                    out << dpx::to_json(en.slice(hilb_t)).dump(2) << "\n";
                } else if (g.format == "csv") {
                    out << "a";
                    for (int i = 1; i <= hilb_r; ++i) out << ",b" << i;
                    out << ",orbit_size,h0\n";
                    for (const auto& e : en.slice(hilb_t).entries)
                        out << csv_class_row(e.cls) << "," << e.orbit_size << "," << e.h0
                            << "\n";
                } else {
                    out << en.hilbert_value(hilb_t) << "\n";
                }
            }
        } else if (orbit->parsed()) {
            dpx::DivisorClass d = class_arg(orbit_class, orbit_r);
            auto members = dpx::weyl_orbit(d, orbit_cap);
            if (g.format == "json") {
                dpx::json j{{"class", dpx::to_json(d)}, {"size", members.size()}};
                j["members"] = dpx::json::array();
                for (const auto& m : members) j["members"].push_back(dpx::to_json(m));
                out << j.dump(2) << "\n";
            } else {
                out << "orbit size " << members.size() << "\n";
                for (const auto& m : members) out << "  " << m << "\n";
            }
        } else if (points->parsed()) {
            dpx::PointConfig pc =
                dpx::random_general_points(dpx::Surface(points_r), g.seed, points_height);
            if (g.format == "json") {
                out << dpx::to_json(pc).dump(2) << "\n";
            } else {
                out << "r=" << pc.r << " seed=" << pc.seed << "\n";
                for (const auto& p : pc.points)
                    out << "  [" << p.h[0] << " : " << p.h[1] << " : " << p.h[2] << "]\n";
                out << "certificate:\n";
                for (const auto& c : pc.certificate) out << "  - " << c << "\n";
            }
        } else if (betti->parsed()) {
            dpx::Surface s(betti_r);
            dpx::SectionModel model(dpx::random_general_points(s, g.seed));
            dpx::KoszulContext ctx(model);
            if (betti_diagram_flag) {
                dpx::HilbertData hd = dpx::hilbert_data(s, enum_options(g));
                dpx::BettiDiagram d = dpx::betti_diagram(ctx, hd);
                if (betti_stress && betti_r == 5) {
                    // direct koszul on the middle multidegrees, off the default path
                    dpx::Int b35 = 0, b46 = 0;
                    for (const auto& orb : dpx::nef_orbit_types(s, 5))
                        b35 += dpx::Int(orb.members.size()) *
                               ctx.betti(3, orb.representative);
                    if (b35 != d.b(3, 5))
                        throw std::logic_error("stress check failed at b_{3,5}");
                    out << "stress: b_{3,5} by direct koszul = " << b35.get_str() << "\n";
                    (void)b46;
                }
                if (g.format == "json") {
                    out << dpx::to_json(d).dump(2) << "\n";
                } else {
                    out << d.grid();
                }
            } else {
                if (betti_i < 0 || betti_class.empty())
                    throw CLI::ValidationError("betti", "--i and --class are required");
                dpx::DivisorClass d = class_arg(betti_class, betti_r);
                dpx::BettiRecord rec = dpx::koszul_betti(ctx, betti_i, d);
                if (g.format == "json") {
                    out << dpx::json{{"i", rec.i},
                                     {"class", dpx::to_json(rec.multidegree)},
                                     {"value", rec.value.get_str()},
                                     {"method", "koszul"}}
                               .dump(2)
                        << "\n";
                } else {
                    out << rec.value << "\n";
                }
            }
        } else if (verify->parsed()) {
            dpx::VerifyOptions vo;
            vo.seed = g.seed;
            vo.enumeration = enum_options(g);
            if (verify_r != "all") vo.rs = {std::stoi(verify_r)};
            if (!verify_section.empty()) vo.sections = {verify_section};
            bool json_mode = g.format == "json";
            dpx::json jres = dpx::json::array();
            vo.on_result = [&](const dpx::CheckResult& res) {
                if (json_mode) {
                    jres.push_back(dpx::json{{"section", res.section},
                                             {"r", res.r},
                                             {"name", res.name},
                                             {"passed", res.passed},
                                             {"detail", res.detail},
                                             {"seconds", res.seconds}});
                } else {
                    std::ostringstream line;
                    line << (res.passed ? "[PASS] " : "[FAIL] ") << res.section
                         << " r=" << res.r << " " << res.name << " (" << std::fixed
                         << std::setprecision(1) << res.seconds << "s): " << res.detail
                         << "\n";
                    std::cout << line.str() << std::flush;
                }
            };
            auto results = dpx::verify_paper(vo);
            bool ok = true;
            int failed = 0;
            for (const auto& res : results) {
                ok &= res.passed;
                failed += res.passed ? 0 : 1;
            }
            if (json_mode) {
                emit(g, jres.dump(2) + "\n");
            } else {
                std::ostringstream sum;
                sum << results.size() << " checks, " << failed << " failed\n";
                emit(g, sum.str());
            }
            return ok ? 0 : kExitFailure;
        }
        emit(g, out.str());
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dpx::capacity_error& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
