#include <unistd.h>

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"toricctl: check fans, charts and fan morphisms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", toricctl::kToolVersion);

  toricctl::Options opt;
  std::string format = "json";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", opt.threads, "worker threads for the per-cone checks")->check(CLI::Range(1u, 256u));
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* check = app.add_subcommand("check", "validate a fan and report scheme properties");
  check->add_option("file", opt.files, "model file")->required()->expected(1);
  check->add_option("--require", opt.require, "fail with status 1 unless the property holds")
      ->check(CLI::IsMember({"proper", "complete", "regular"}));
  add_common(check);

  CLI::App* charts = app.add_subcommand("charts", "affine chart presentations and gluing data");
  charts->add_option("file", opt.files, "model file")->required()->expected(1);
  add_common(charts);

  CLI::App* dualize = app.add_subcommand("dualize", "Hilbert bases of each cone and of its dual");
  dualize->add_option("file", opt.files, "model file")->required()->expected(1);
  add_common(dualize);

  CLI::App* morphism = app.add_subcommand("morphism", "check a fan morphism given by an integer matrix");
  morphism->add_option("files", opt.files, "source model, then target model")->required()->expected(1, 2);
  morphism->add_option("--matrix", opt.matrix, "matrix as JSON rows, or a file holding them");
  morphism->add_option("--require", opt.require, "fail with status 1 unless the property holds")
      ->check(CLI::IsMember({"proper", "birational"}));
  add_common(morphism);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return toricctl::kInvalidInput;
  }
  opt.command = app.get_subcommands().front()->get_name();

  const toricctl::Outcome out = toricctl::run_command(opt);
  std::cout << (format == "text" ? toricctl::render_text(out.document) : toricctl::render_json(out.document));
  std::cout.flush();
  if (isatty(STDERR_FILENO)) std::cerr << toricctl::summary(out.document);
  return out.status;
}
