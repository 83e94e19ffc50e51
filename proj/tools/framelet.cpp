#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace framelet::cli;

int main(int argc, char** argv) {
    CLI::App app{"framelet: exact dual multiframelet construction and transforms"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* con = app.add_subcommand("construct", "build a dual multiframelet bank from two masks");
    con->add_option("--mask", ca.mask, "primal mask JSON file")->required();
    con->add_option("--dual-mask", ca.dual_mask, "dual mask JSON file")->required();
    con->add_option("--dilation", ca.dilation, "dilation matrix, JSON text or file")->required();
    con->add_option("--balancing", ca.balancing, "balancing matrix N, JSON text or file");
    con->add_flag("--scalar", ca.scalar, "r = 1 construction");
    con->add_option("-o,--output", ca.output, "bank output path")->required();

    VerifyArgs va;
    std::string conds;
    auto* ver = app.add_subcommand("verify", "check a bank");
    ver->add_option("bank", va.bank, "bank JSON file")->required();
    ver->add_option("--conditions", conds, "comma list of oep,moments,balancing,theta1,normalform");
    ver->add_option("--seed", va.seed, "seed for randomized checks");

    TransformArgs ta;
    auto* tr = app.add_subcommand("transform", "analyze and reconstruct data");
    tr->add_option("--bank", ta.bank, "bank JSON file")->required();
    tr->add_option("--data", ta.data, "data JSON file")->required();
    tr->add_option("--levels", ta.levels, "number of levels J");
    tr->add_flag("--compact", ta.compact, "use the compact filters (Theta = I)");
    tr->add_option("-o,--output", ta.output, "coefficient output path");
    tr->add_option("--seed", ta.seed, "unused, accepted for uniformity");

    std::string rep_bank;
    auto* rep = app.add_subcommand("report", "summary table of a bank");
    rep->add_option("bank", rep_bank, "bank JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kHypothesis;
    }

    if (*con) return cmd_construct(ca, std::cout, std::cerr);
    if (*ver) {
        std::stringstream ss(conds);
        for (std::string c; std::getline(ss, c, ',');)
            if (!c.empty()) va.conditions.push_back(c);
        return cmd_verify(va, std::cout, std::cerr);
    }
    if (*tr) return cmd_transform(ta, std::cout, std::cerr);
    return cmd_report(rep_bank, std::cout, std::cerr);
}
