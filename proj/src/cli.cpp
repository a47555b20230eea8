#include "hardcore/errors.hpp"
#include "hardcore/sweep.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace hardcore::cli {

namespace {

struct OptionalDouble {
    CLI::Option *option = nullptr;
    double value = 0.0;

    void add(CLI::App &app, const std::string &name, const std::string &help) {
        option = app.add_option(name, value, help);
    }
    void into(std::optional<double> &target) const {
        if (option->count() > 0)
            target = value;
    }
};

void write_output(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot open output file '" + path + "'");
    file << text;
    file.close();
    if (!file)
        throw IoError("failed writing output file '" + path + "'");
}

} // namespace

int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Entanglement generated by hard-core scattering of two Gaussian wave packets", "hardcore-scatter"};
    app.set_config("--config", "", "flat key = value file; command-line flags override it");
    app.require_subcommand(1);

    SweepConfig cfg;
    const std::map<std::string, Mode> modes{{"single", Mode::Single},
                                            {"sweep-mu", Mode::SweepMu},
                                            {"ellipse", Mode::Ellipse},
                                            {"transient", Mode::Transient},
                                            {"oracle-check", Mode::OracleCheck}};
    const std::map<std::string, std::string> descriptions{
        {"single", "asymptotic entanglement for one parameter set"},
        {"sweep-mu", "d, entropy and purity over a mu1 grid at fixed width ratio"},
        {"ellipse", "initial and final ellipse geometry with boundary points"},
        {"transient", "Schmidt entropy of the image solution over time"},
        {"oracle-check", "grid Schmidt entropy of g0 against the closed form"}};
    std::map<std::string, CLI::App *> subcommands;
    for (const auto &[name, mode] : modes) {
        CLI::App *sub = app.add_subcommand(name, descriptions.at(name));
        sub->fallthrough();
        subcommands[name] = sub;
    }

    OptionalDouble mu1, mass1, mass2, sigma1_sq, sigma2_sq, ratio, q1, q2;
    mu1.add(app, "--mu1", "mass fraction m1/(m1+m2)");
    mass1.add(app, "--mass1", "mass of particle 1");
    mass2.add(app, "--mass2", "mass of particle 2");
    sigma1_sq.add(app, "--sigma1-sq", "initial width^2 of particle 1");
    sigma2_sq.add(app, "--sigma2-sq", "initial width^2 of particle 2 (default 1)");
    ratio.add(app, "--ratio", "width ratio sigma1/sigma2 (default 10)");
    q1.add(app, "--q1", "start position of particle 1 (default 8 max sigma + a)");
    q2.add(app, "--q2", "start distance of particle 2 left of the origin");
    app.add_option("--core-radius", cfg.core_radius, "hard-core radius a")->capture_default_str();
    app.add_option("--momentum", cfg.momentum, "approach momentum K")->capture_default_str();
    app.add_option("--mu-start", cfg.mu_start, "sweep-mu first mu1")->capture_default_str();
    app.add_option("--mu-stop", cfg.mu_stop, "sweep-mu last mu1")->capture_default_str();
    int points = 0;
    CLI::Option *points_opt =
        app.add_option("--points", points, "sweep rows / ellipse boundary points / transient time points");
    app.add_option("--times", cfg.times, "transient time list")->delimiter(',');
    app.add_option("--grid-n", cfg.grid_n, "oracle grid points per axis")->capture_default_str();
    app.add_option("--grid-widths", cfg.grid_widths, "oracle grid half-extent in standard deviations")
        ->capture_default_str();
    app.add_option("--out", cfg.out, "output path (stdout when omitted)");
    std::string format = "csv";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }

    for (const auto &[name, sub] : subcommands)
        if (sub->parsed())
            cfg.mode = modes.at(name);
    mu1.into(cfg.mu1);
    mass1.into(cfg.mass1);
    mass2.into(cfg.mass2);
    sigma1_sq.into(cfg.sigma1_sq);
    sigma2_sq.into(cfg.sigma2_sq);
    ratio.into(cfg.ratio);
    q1.into(cfg.q1);
    q2.into(cfg.q2);
    if (points_opt->count() > 0)
        cfg.points = points;
    cfg.format = format == "json" ? Format::Json : Format::Csv;

    try {
        const Record record = run(cfg);
        write_output(render(record, cfg.mode, cfg.format), cfg.out, out);
        if (cfg.mode == Mode::OracleCheck && !record.at("pass").get<bool>()) {
            err << "oracle-check failed: |Schmidt - analytic| = " << record.at("abs_diff").get<double>()
                << " bits exceeds " << oracle_tolerance_bits << '\n';
            return exit_oracle;
        }
        return exit_ok;
    } catch (const CoverageError &e) {
        err << "coverage error: " << e.what() << " (grid-n " << cfg.grid_n << ", grid-widths "
            << cfg.grid_widths << ")\n";
        return exit_oracle;
    } catch (const IoError &e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const DomainError &e) {
        err << "invalid parameters: " << e.what() << '\n';
        return exit_validation;
    } catch (const InvariantViolation &e) {
        err << "invalid parameters: " << e.what() << '\n';
        return exit_validation;
    }
}

} // namespace hardcore::cli
