// qb: load a workspace file, run one command over it, render the report.
// Exit status: 0 when every checked property passes, 1 when some check
// fails (the report carries the witnesses), 2 on input errors.

#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quillen/corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"finite computations with Quillen bifibrations"};
  app.require_subcommand(1);

  std::string input, output, format = "text", tie = "smallest", kind;
  int size_guard = 0, parallel = 1;
  uint64_t seed = 1;

  const std::vector<std::string> commands = {"validate", "enumerate", "wfs",    "model",
                                             "bifib",    "mates",     "construct", "theorem",
                                             "reedy",    "bigluing",  "compare-rs-hp"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " checks over a workspace");
    sub->add_option("--input", input, "workspace file")->required();
    sub->add_option("--output", output, "write the report here instead of stdout");
    sub->add_option("--format", format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--size-guard", size_guard, "cap on enumerated sizes, 0 keeps the default");
    sub->add_option("--tie", tie, "cleavage tie break: smallest or largest")
        ->check(CLI::IsMember({"smallest", "largest"}));
    sub->add_option("--parallel", parallel,
                    "accepted for interface stability; runs are single process");
  }
  CLI::App* gen = app.add_subcommand("generate", "write a deterministic corpus file");
  gen->add_option("--kind", kind, "corpus kind")
      ->required()
      ->check(CLI::IsMember(
          {"product", "cod", "dom", "collage", "random-lattice-bifib", "reedy"}));
  gen->add_option("--output", output, "path of the file to write")->required();
  gen->add_option("--seed", seed, "seed for the randomized kinds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      quillen::corpus::generate_corpus(kind, output, seed);
      return 0;
    }
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << input << "\n";
      return 2;
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    quillen::Workspace ws = quillen::load_spec_text(bytes);
    quillen::CliOptions opt;
    opt.format = format;
    opt.size_guard = size_guard;
    opt.tie = tie == "largest" ? quillen::TieBreak::largest : quillen::TieBreak::smallest;
    const std::string cmd = app.get_subcommands().front()->get_name();
    quillen::Report rep = quillen::run_command(cmd, ws, input, bytes, opt);
    std::string rendered = rep.render(format);
    if (output.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << output << "\n";
        return 2;
      }
      out << rendered;
    }
    return rep.exit_code();
  } catch (const quillen::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const quillen::ValidationError& e) {
    std::cerr << "validation error [" << e.kind << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
