#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cert/errors.hpp"
#include "cert/eta.hpp"
#include "cert/family.hpp"
#include "cert/params.hpp"
#include "cert/protocols.hpp"
#include "cert/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInput = 3;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, sep))
        if (!tok.empty())
            parts.push_back(tok);
    return parts;
}

cert::FamilySpec load_family(const std::string& arg) {
    // "@path" loads the spec from a file, anything else is inline text
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw cert::ParseError("cannot open family file: " + arg.substr(1));
        std::ostringstream buf;
        buf << in.rdbuf();
        return cert::FamilySpec::parse(buf.str());
    }
    return cert::FamilySpec::parse(arg);
}

struct ParamsArgs {
    std::string protocol = "bmom";
    double delta = 0.0, eps = 0.0, p = 0.0, alpha = 0.25;
    std::size_t n = 1;
};

cert::ProtocolParams solve_for(const ParamsArgs& a) {
    if (a.protocol == "dfe") {
        auto params = cert::solve_dfe(a.delta, a.eps, a.p);
        params.n = a.n;
        return params;
    }
    return cert::solve_bmom(a.n, a.delta, a.eps, a.p, a.alpha);
}

int cmd_params(const ParamsArgs& a) {
    cert::ProtocolParams params;
    try {
        params = solve_for(a);
    } catch (const cert::InfeasibleGap& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        if (a.protocol == "bmom")
            std::cerr << "chain: delta < 2*delta < beta < alpha*eps < eps requires "
                      << "2*delta=" << 2 * a.delta << " < alpha*eps=" << a.alpha * a.eps << "\n";
        else
            std::cerr << "chain: delta < beta < eps requires delta=" << a.delta
                      << " < eps=" << a.eps << "\n";
        return kExitInfeasible;
    }
    params.print_keyvalue(std::cout);
    std::cout << cert::params_csv_header() << "\n";
    params.print_csv_row(std::cout);
    // echo the threshold chain with both endpoints
    if (params.protocol == cert::Protocol::Bmom)
        std::cout << "chain: " << params.delta << " < " << params.omega * params.delta << " < "
                  << params.beta << " < " << params.alpha * params.eps << " < " << params.eps
                  << "\n";
    else
        std::cout << "chain: " << params.delta << " < " << params.beta << " < " << params.eps
                  << "\n";
    return kExitOk;
}

struct CertifyArgs {
    ParamsArgs params;
    std::string circuit_path;
    std::string family = "family pure";
    std::uint64_t seed = 0;
    std::string transcript_path;
};

int cmd_certify(const CertifyArgs& a) {
    auto circuit = cert::CircuitTemplate::parse_file(a.circuit_path);
    auto psi0 = cert::tableau_from_circuit(circuit);
    auto spec = load_family(a.family);
    auto rho = spec.build(psi0);
    ParamsArgs pa = a.params;
    pa.n = psi0.num_qubits();

    cert::ProtocolParams params;
    try {
        params = solve_for(pa);
    } catch (const cert::InfeasibleGap& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    }

    cert::StationarySource src(rho);
    std::mt19937_64 rng(a.seed);
    cert::RunOptions opts;
    opts.keep_outcomes = true;
    auto summary = params.protocol == cert::Protocol::DfeC
                       ? cert::run_dfe_c(psi0, params, src, rng, opts)
                       : cert::run_bmom(psi0, params, src, rng, opts);
    summary.seed = a.seed;

    std::cout << (summary.accept ? "ACCEPT" : "REJECT") << "\n";
    std::cout << "mu=" << summary.mu << "\n";
    std::cout << "nu=" << summary.nu << "\n";
    std::cout << "settings=" << cert::measurement_settings_count(summary) << "\n";
    if (!a.transcript_path.empty()) {
        std::ofstream out(a.transcript_path);
        if (!out)
            throw cert::ParseError("cannot open transcript output: " + a.transcript_path);
        cert::write_transcript(out, summary);
    }
    return kExitOk;
}

struct EtaArgs {
    std::string n_list = "2,3,4";
    std::string alpha_list = "0.5";
    double eps = 0.2;
    std::string family;  // empty: flip family at c=eps
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string svg_path;
    bool with_exact = false;
};

int cmd_eta(const EtaArgs& a) {
    std::vector<std::size_t> ns;
    for (const auto& t : split(a.n_list, ','))
        ns.push_back(std::stoul(t));
    std::vector<double> alphas;
    for (const auto& t : split(a.alpha_list, ','))
        alphas.push_back(std::stod(t));
    if (ns.empty() || alphas.empty()) {
        std::cerr << "error: empty (n, alpha) grid\n";
        return kExitInput;
    }
    std::ofstream out(a.out_path);
    if (!out) {
        std::cerr << "error: cannot open output file " << a.out_path << "\n";
        return kExitInput;
    }
    out << "n,alpha,epsilon,family,method,estimate,ci_low,ci_high,trials,seed\n";

    std::mt19937_64 rng(a.seed);
    cert::SvgPlot plot;
    plot.title = "intrinsic false-positive probability";
    plot.x_label = "n";
    plot.y_label = "eta";
    plot.reference_y = 1e-12;
    const char* colors[] = {"steelblue", "firebrick", "seagreen", "darkorange", "purple"};
    std::size_t color_i = 0;

    for (double alpha : alphas) {
        cert::SvgPlot::Series mc_series{"mc alpha=" + std::to_string(alpha),
                                        colors[color_i % 5], {}};
        cert::SvgPlot::Series ub_series{"upper shape alpha=" + std::to_string(alpha),
                                        colors[(color_i + 1) % 5], {}};
        for (std::size_t n : ns) {
            cert::CircuitTemplate empty{n, {}};
            auto psi0 = cert::tableau_from_circuit(empty);
            auto rho = a.family.empty()
                           ? cert::generator_flip_family(psi0, a.eps)
                           : load_family(a.family).build(psi0);
            auto est = cert::eta_monte_carlo(rho, psi0, alpha, a.eps, a.trials, rng);
            out << est.n << ',' << est.alpha << ',' << est.eps << ',' << est.family << ','
                << est.method << ',' << est.estimate << ',' << est.ci_low << ',' << est.ci_high
                << ',' << est.trials << ',' << a.seed << "\n";
            mc_series.points.emplace_back(static_cast<double>(n), est.estimate);
            if (a.with_exact && n <= 4) {
                auto exact = cert::eta_exact(rho, psi0, alpha, a.eps);
                out << exact.n << ',' << exact.alpha << ',' << exact.eps << ',' << exact.family
                    << ',' << exact.method << ',' << exact.estimate << ',' << exact.ci_low << ','
                    << exact.ci_high << ',' << exact.trials << ',' << a.seed << "\n";
            }
        }
        for (const auto& row : cert::eta_bound_curves(ns, alpha)) {
            out << row.n << ',' << alpha << ',' << a.eps << ",bound,upper_shape,"
                << row.upper_shape << ",,," << 0 << ',' << a.seed << "\n";
            out << row.n << ',' << alpha << ',' << a.eps << ",bound,lower_shape,"
                << row.lower_shape << ",,," << 0 << ',' << a.seed << "\n";
            ub_series.points.emplace_back(static_cast<double>(row.n), row.upper_shape);
        }
        plot.series.push_back(std::move(mc_series));
        plot.series.push_back(std::move(ub_series));
        color_i += 2;
    }
    if (!a.svg_path.empty()) {
        std::ofstream svg(a.svg_path);
        if (!svg) {
            std::cerr << "error: cannot open SVG output " << a.svg_path << "\n";
            return kExitInput;
        }
        plot.render(svg);
    }
    return kExitOk;
}

struct AmplifyArgs {
    std::size_t n = 100;
    double eps = 0.1;
    std::int64_t trials = 10000;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_amplify_demo(const AmplifyArgs& a) {
    if (a.n < 2) {
        std::cerr << "error: amplify-demo requires n >= 2\n";
        return kExitInput;
    }
    std::ofstream out(a.out_path);
    if (!out) {
        std::cerr << "error: cannot open output file " << a.out_path << "\n";
        return kExitInput;
    }
    // fixed canonical basis: the worst element is a single generator
    double fixed_min = 1.0 - 2.0 * a.eps / static_cast<double>(a.n);
    std::mt19937_64 rng(a.seed);
    out << "trial,fixed_basis_min,random_basis_min\n";
    for (std::int64_t t = 0; t < a.trials; ++t) {
        auto [basis, rounds] = cert::sample_full_rank(a.n, rng);
        (void)rounds;
        std::size_t max_wt = 0;
        for (std::size_t i = 0; i < a.n; ++i)
            max_wt = std::max(max_wt, basis.row(i).popcount());
        double random_min =
            1.0 - 2.0 * a.eps * static_cast<double>(max_wt) / static_cast<double>(a.n);
        out << t << ',' << fixed_min << ',' << random_min << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizer-state certification toolkit"};
    app.require_subcommand(1);

    ParamsArgs pa;
    auto* params_cmd = app.add_subcommand("params", "derive protocol operating parameters");
    params_cmd->add_option("--protocol", pa.protocol)->check(CLI::IsMember({"dfe", "bmom"}));
    params_cmd->add_option("--delta", pa.delta)->required();
    params_cmd->add_option("--eps", pa.eps)->required();
    params_cmd->add_option("--p", pa.p)->required();
    params_cmd->add_option("--alpha", pa.alpha);
    params_cmd->add_option("--n", pa.n);

    CertifyArgs ca;
    auto* certify_cmd = app.add_subcommand("certify", "run one certification instance");
    certify_cmd->add_option("--circuit", ca.circuit_path)->required();
    certify_cmd->add_option("--family", ca.family);
    certify_cmd->add_option("--protocol", ca.params.protocol)
        ->check(CLI::IsMember({"dfe", "bmom"}));
    certify_cmd->add_option("--delta", ca.params.delta)->required();
    certify_cmd->add_option("--eps", ca.params.eps)->required();
    certify_cmd->add_option("--p", ca.params.p)->required();
    certify_cmd->add_option("--alpha", ca.params.alpha);
    certify_cmd->add_option("--seed", ca.seed)->required();
    certify_cmd->add_option("--transcript", ca.transcript_path);

    EtaArgs ea;
    auto* eta_cmd = app.add_subcommand("eta", "estimate eta_n(alpha) over an (n, alpha) grid");
    eta_cmd->add_option("--n", ea.n_list);
    eta_cmd->add_option("--alpha", ea.alpha_list);
    eta_cmd->add_option("--eps", ea.eps);
    eta_cmd->add_option("--family", ea.family);
    eta_cmd->add_option("--trials", ea.trials);
    eta_cmd->add_option("--seed", ea.seed)->required();
    eta_cmd->add_option("--out", ea.out_path)->required();
    eta_cmd->add_option("--svg", ea.svg_path);
    eta_cmd->add_flag("--exact", ea.with_exact);

    AmplifyArgs aa;
    auto* amp_cmd = app.add_subcommand("amplify-demo",
                                       "fixed-basis vs random-basis minimum expectation");
    amp_cmd->add_option("--n", aa.n);
    amp_cmd->add_option("--eps", aa.eps);
    amp_cmd->add_option("--trials", aa.trials);
    amp_cmd->add_option("--seed", aa.seed)->required();
    amp_cmd->add_option("--out", aa.out_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (params_cmd->parsed())
            return cmd_params(pa);
        if (certify_cmd->parsed())
            return cmd_certify(ca);
        if (eta_cmd->parsed())
            return cmd_eta(ea);
        if (amp_cmd->parsed())
            return cmd_amplify_demo(aa);
    } catch (const cert::InfeasibleGap& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
