#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "charp/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"charp: exact prime-characteristic commutative algebra"};

  std::string script_path;
  std::string verify_id;
  std::string eval_text;
  charp::SessionOptions opt;
  std::string order = "grevlex";
  std::string vars;
  unsigned p = 0;

  app.add_option("script", script_path, "session script file ('-' for stdin)");
  app.add_option("--verify", verify_id, "run a built-in fixture (or 'all')");
  app.add_option("-e,--eval", eval_text, "run the given statements directly");
  app.add_option("--p", p, "default characteristic");
  app.add_option("--vars", vars, "default variables (comma separated)");
  app.add_option("--order", order, "default monomial order: lex|grevlex")
      ->check(CLI::IsMember({"lex", "grevlex"}));
  app.add_option("--max-e", opt.max_e, "Frobenius level cap for chains");
  app.add_option("--step-cap", opt.step_cap, "Groebner reduction step cap");
  app.add_option("--seed", opt.seed, "seed for randomized factor splitting");
  app.add_flag("--json", opt.json, "mirror the transcript as JSON");

  CLI11_PARSE(app, argc, argv);

  opt.default_p = p;
  opt.default_vars = vars;
  opt.default_order = order == "lex" ? charp::Order::Lex : charp::Order::Grevlex;

  std::string script;
  if (!verify_id.empty()) {
    script = "verify " + verify_id;
  } else if (!eval_text.empty()) {
    script = eval_text;
  } else if (!script_path.empty()) {
    if (script_path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      script = ss.str();
    } else {
      std::ifstream in(script_path);
      if (!in) {
        std::cerr << "cannot open " << script_path << "\n";
        return 1;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      script = ss.str();
    }
  } else {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    script = ss.str();
  }

  charp::Transcript tr = charp::run_session(script, opt);
  if (opt.json)
    std::cout << tr.json;
  else
    std::cout << tr.text;
  return tr.exit_code;
}
