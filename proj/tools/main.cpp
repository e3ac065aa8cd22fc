#include <exception>
#include <iostream>

#include "cli_support.hpp"
#include "citenet/common/error.hpp"

int main(int argc, char** argv) {
  using namespace citenet;
  CLI::App app{"citenet: citation-intent classification and intent-aware citation network analysis"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "print help for every subcommand");

  tool::Command command;
  tool::register_data_commands(app, command);
  tool::register_model_commands(app, command);
  tool::register_network_commands(app, command);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return command();
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
