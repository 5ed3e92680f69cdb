#include "scenario.hpp"

#include "online/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Run online-algorithm experiments and write CSV/JSONL results."};
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

    onlinectl::Scenario s;
    std::size_t oracle_cap = 0;
    app.add_option("subcommand,--subcommand", s.subcommand, "colour | pack | chains | reduce | wkl | analysis")
        ->required();
    app.add_option("--solver", s.solver,
                   "colour: first-fit, cbip, arbitrary, chains; pack: first-fit; chains: kierstead-trotter; "
                   "reduce: colour-via-chains; wkl: leftmost; analysis: x, x2, abs, sine");
    app.add_option("--n", s.n, "instance size (analysis: largest precision index)")->capture_default_str();
    app.add_option("--d", s.d, "inductiveness, average degree (cbip) or largest denominator (pack)")
        ->capture_default_str();
    app.add_option("--k", s.k, "width bound for interval instances")->capture_default_str();
    app.add_option("--t", s.t, "colour: play the forcing adversary for t colours instead")->capture_default_str();
    app.add_option("--seed", s.seed, "first seed")->capture_default_str();
    app.add_option("--seeds", s.seeds, "number of consecutive seeds")->capture_default_str();
    app.add_option("--horizon", s.horizon, "stages for wkl runs")->capture_default_str();
    app.add_option("--out-dir", s.out_dir, "output directory")->capture_default_str();
    auto* cap = app.add_option("--oracle-cap", oracle_cap, "largest instance the exact oracles accept");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (*cap) {
        s.oracle_cap = oracle_cap;
    }

    try {
        return onlinectl::run_scenario(s, std::cout);
    } catch (const onlinectl::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const online::OracleCapExceeded& e) {
        std::cerr << "error: " << e.what() << " (subcommand " << s.subcommand << ", n=" << s.n
                  << "); raise --oracle-cap or lower --n\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
