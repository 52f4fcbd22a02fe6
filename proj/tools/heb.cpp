#include "heb/cli.hpp"
#include "heb/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Hölder error bounds for polynomial inequality systems"};
    app.require_subcommand(1);

    heb::RunConfig cfg;
    std::string box, rings, point, tau_axis, format = "text";
    std::size_t samples = 0, multistarts = 0;
    double tau_zero = 0.0;

    const std::pair<const char*, const char*> commands[] = {
        {"analyze", "Newton polyhedra, convenience and faces at infinity"},
        {"certify", "Non-degeneracy at infinity, face by face"},
        {"exponent", "Hölder exponent alpha = 2/H(2d, n, p)"},
        {"verify", "Empirical check of the error bound on sampled points"},
        {"slope", "Nonsmooth slope of max f_i at --point"},
        {"quadratic", "Square-root bound for a single quadratic"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", cfg.input_path, "System file")->required();
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--samples", samples, "Sample budget");
        sub->add_option("--multistarts", multistarts, "Multistart budget");
        sub->add_option("--box", box, "Sampling box lo:hi,lo:hi,...");
        sub->add_option("--rings", rings, "Probe radii r1,r2,...");
        sub->add_option("--point", point, "Evaluation point v1,v2,...");
        sub->add_option("--tau-zero", tau_zero, "Zero threshold of the normalized objective");
        sub->add_option("--tau-axis", tau_axis, "Axis distance schedule t1,t2,...");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", cfg.out_path, "Write the report to PATH");
        sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.command = heb::parse_command(app.get_subcommands().front()->get_name());
        if (samples) cfg.samples = samples;
        if (multistarts) cfg.multistarts = multistarts;
        if (tau_zero > 0.0) cfg.tau_zero = tau_zero;
        if (!box.empty()) cfg.box = heb::parse_box(box);
        if (!rings.empty()) cfg.rings = heb::parse_list(rings);
        if (!point.empty()) cfg.point = heb::parse_list(point);
        if (!tau_axis.empty()) cfg.tau_axis = heb::parse_list(tau_axis);
        cfg.format = format == "json" ? heb::OutputFormat::Json : heb::OutputFormat::Text;
    } catch (const heb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return heb::run(cfg, std::cout, std::cerr);
}
