#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rc/cli.hpp"

int main(int argc, char** argv) {
  using namespace rc;
  cli::RunConfig cfg;
  CLI::App app{"rcx: relaxation complexity of lattice-convex sets"};
  app.require_subcommand(1);
  std::string mode = "rigorous";
  std::size_t budget = 0;
  Int asym = 0, box = 0;
  int k = 0;
  std::string out, z;

  auto common = [&](CLI::App* s, const std::string& inputs_help) {
    s->add_option("inputs", cfg.inputs, inputs_help)->required()->check(CLI::ExistingFile);
    s->add_option("--out", out, "write the JSON result to this file");
    s->add_option("--threads", cfg.threads, "worker threads (results do not depend on it)");
    s->add_option("--max-k", cfg.max_k, "largest number of inequalities tried");
  };
  auto* check = app.add_subcommand("check-convex", "is the point set lattice-convex");
  common(check, "point-set JSON");
  auto* width = app.add_subcommand("width", "lattice width and width directions");
  common(width, "point-set JSON");
  auto* obs = app.add_subcommand("observers", "observer set with finiteness certificate");
  common(obs, "point-set JSON");
  auto* rcc = app.add_subcommand("rc", "relaxation complexity");
  common(rcc, "point-set JSON");
  auto* rel = app.add_subcommand("rc-relative", "fewest inequalities separating X from Y");
  common(rel, "X.json Y.json");
  auto* qe = app.add_subcommand("qelim", "decide an s-expression formula");
  common(qe, "formula file");
  auto* milp = app.add_subcommand("emit-milp", "separation MILP in LP format");
  common(milp, "X.json Y.json");
  auto* ver = app.add_subcommand("verify", "check that a certificate is a relaxation of X");
  common(ver, "X.json CERT.json");

  std::vector<CLI::Option*> o_budget, o_box;
  for (auto* s : {obs, rcc}) o_budget.push_back(s->add_option("--budget", budget, "observer search candidates (env RCX_BUDGET)"));
  rcc->add_option("--mode", mode, "rigorous or practical")->check(CLI::IsMember({"rigorous", "practical"}));
  auto* o_asym = rcc->add_option("--asymmetry-constant", asym, "box-mode constant, practical mode only");
  o_box.push_back(rcc->add_option("--box", box, "lattice points scanned in box mode"));
  o_box.push_back(ver->add_option("--box", box, "check only inside [-R,R]^d"));
  auto* o_k = milp->add_option("--k", k, "number of inequalities")->required();
  auto* o_z = qe->add_option("--z", z, "universal integer variable");
  auto given = [](const std::vector<CLI::Option*>& os) {
    for (auto* o : os)
      if (o->count()) return true;
    return false;
  };
  qe->add_flag("--exists", cfg.exists, "existential closure of every variable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.mode = mode == "practical" ? Mode::Practical : Mode::Rigorous;
  if (given(o_budget)) cfg.budget = budget;
  if (o_asym->count()) cfg.asymmetry_constant = asym;
  if (given(o_box)) cfg.box = box;
  if (o_k->count()) cfg.k = k;
  if (o_z->count()) cfg.z = z;
  if (!out.empty()) cfg.out = out;

  try {
    auto R = cli::run(cfg);
    std::string text = cli::render(R.result);
    if (cfg.out) {
      std::ofstream f(*cfg.out, std::ios::binary);
      if (!f) throw InputError(*cfg.out + ": cannot write file");
      f << text;
    } else {
      std::cout << text;
    }
    return static_cast<int>(R.code);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
