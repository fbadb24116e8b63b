// burchtool: run a session file of Burch-index and resolution commands.
//
//   burchtool session.burch [--format text|json] [--steps 8] ...
//   burchtool session.burch --print        # normalized session text
//   echo "..." | burchtool -

#include <burch/session.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Burch indices, iterated Burch chains and minimal resolutions over S/I"};
  std::string path;
  std::string format = "text";
  std::optional<std::uint32_t> prime;
  std::optional<int> degree_bound;
  burch::RunOptions opt;
  bool print = false;
  std::vector<std::string> extra;

  app.add_option("session", path, "session file, or - for stdin")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--prime", prime, "override the ring modulus");
  app.add_option("--steps", opt.steps, "default resolution length")->check(CLI::Range(1, 64));
  app.add_option("--max-iter", opt.max_iter, "default cap on the Burch chain")->check(CLI::Range(1, 1000));
  app.add_option("--window", opt.window, "tail window for stabilization checks")->check(CLI::Range(1, 64));
  app.add_option("--seed", opt.seed, "default fuzz seed");
  app.add_option("--degree-bound", degree_bound, "largest degree used for Tor");
  app.add_option("-c,--command", extra, "append a command line to the session");
  app.add_flag("--print", print, "print the normalized session and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  opt.degree_bound = degree_bound;

  std::string text;
  if (!read_input(path, text)) {
    std::cerr << path << ": cannot read\n";
    return 1;
  }
  for (const auto& c : extra) text += "\n" + c;

  burch::SessionSpec session;
  try {
    session = burch::parse_session(text, prime);
  } catch (const burch::ParseError& e) {
    std::cerr << path << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return 1;
  } catch (const burch::Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 1;
  }

  if (print) {
    std::cout << burch::print_session(session);
    return 0;
  }

  burch::RunResult r = burch::run(session, opt);
  if (format == "json")
    std::cout << r.document.dump(2) << "\n";
  else
    std::cout << burch::render_text(r.document);
  return r.exit_code;
}
