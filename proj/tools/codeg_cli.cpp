// Command-line front end: character tables, codegrees, prime graphs,
// classification and the corpus verifier.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "codeg/codeg.hpp"

namespace {

using codeg::Json;

enum Exit { kOk = 0, kFailure = 1, kInputError = 2 };

std::string set_string(const codeg::IntSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

void print_table(const codeg::CharacterTable& t) {
  const auto& g = *t.group;
  std::cout << g.name() << "  order " << g.order() << "  classes " << g.class_count() << "  conductor "
            << t.conductor << "\n";
  std::cout << "class sizes:";
  for (const auto& c : g.classes()) std::cout << ' ' << c.size();
  std::cout << "\nrep orders: ";
  for (const auto& c : g.classes()) std::cout << ' ' << c.rep_order;
  std::cout << "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::cout << "X." << i + 1 << ":";
    for (const auto& v : t.values[i]) std::cout << "  " << v.to_string();
    std::cout << "\n";
  }
}

/// Resolves `GPRIME` or `N=<order>` to a normal subgroup.
codeg::Subgroup relative_subgroup(const codeg::GroupPtr& g, const std::string& which) {
  if (which == "GPRIME") return codeg::derived_subgroup(g);
  if (which.rfind("N=", 0) == 0) {
    auto order = std::stoull(which.substr(2));
    std::vector<codeg::Subgroup> found;
    for (const auto& n : codeg::normal_subgroups(g))
      if (n.subgroup.order() == order) found.push_back(n.subgroup);
    if (found.empty()) throw codeg::ParseError("no normal subgroup of order " + which.substr(2));
    if (found.size() > 1)
      throw codeg::ParseError(std::to_string(found.size()) + " normal subgroups have order " + which.substr(2));
    return found.front();
  }
  throw codeg::ParseError("--relative expects GPRIME or N=<order>");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character tables, codegrees and codegree prime graphs of permutation groups"};
  app.require_subcommand(1);
  std::size_t bound = codeg::kDefaultOrderBound;
  app.add_option("--bound", bound, "Largest group order that will be enumerated")->capture_default_str();

  std::string spec_text;
  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec_text, "Group spec, e.g. 'symmetric 4' or 'file data/g.gens'")->required();
  };

  auto* table = app.add_subcommand("table", "Print the character table");
  add_spec(table);
  auto* codegrees = app.add_subcommand("codegrees", "Print cod(chi) per character and the codegree sets");
  add_spec(codegrees);
  auto* graph = app.add_subcommand("graph", "Print the prime graph of cod(G) or cod(G|N)");
  add_spec(graph);
  std::string relative;
  graph->add_option("--relative", relative, "GPRIME or N=<order>");
  auto* classify = app.add_subcommand("classify", "Decide the *-group property and print the certificate");
  add_spec(classify);
  auto* exporter = app.add_subcommand("export", "Write the group's generators in generator-file format");
  add_spec(exporter);
  auto* verify = app.add_subcommand("verify", "Run the full pipeline over a manifest");
  std::string manifest = "data/default.manifest";
  unsigned jobs = 1;
  std::string json_out;
  verify->add_option("--manifest", manifest, "Manifest file, one spec per line")->capture_default_str();
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    auto rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*verify) {
      auto specs = codeg::read_manifest(manifest);
      if (specs.empty()) throw codeg::ParseError("manifest " + manifest + " lists no groups");
      codeg::SuiteOptions options;
      options.jobs = jobs;
      options.bound = bound;
      auto report = codeg::run_suite(specs, options);
      auto json = codeg::to_json(report);
      if (json_out == "-") {
        std::cout << json.dump(2) << "\n";
      } else {
        if (!json_out.empty()) {
          std::ofstream out(json_out);
          if (!out) throw codeg::ParseError("cannot write " + json_out);
          out << json.dump(2) << "\n";
        }
        for (const auto& r : report.groups) {
          std::cout << (r.passed() ? "ok    " : "FAIL  ") << r.name << "  |G|=" << r.order;
          if (r.error) {
            std::cout << "  error: " << *r.error << "\n";
            continue;
          }
          std::cout << "  cod(G|G')=" << set_string(r.cod_nonlinear) << "  " << to_string(r.certificate->branch);
          if (r.certificate->failure_reason) std::cout << "  " << *r.certificate->failure_reason;
          for (const auto& o : r.oracles)
            if (o.status == codeg::OracleStatus::Fail) std::cout << "  [" << o.name << ": " << o.detail << "]";
          std::cout << "\n";
        }
        const auto& s = json["summary"];
        std::cout << s["passed"] << "/" << s["groups"] << " groups passed, " << s["star_groups"]
                  << " *-groups, " << s["theorem_a_violations"] << " Theorem A violations\n";
      }
      return report.failures() == 0 ? kOk : kFailure;
    }

    auto spec = codeg::parse_spec(spec_text, std::filesystem::current_path());
    auto g = codeg::build_from_spec(spec, bound);

    if (*exporter) {
      std::cout << codeg::format_generator_file(*g, g->name() + ", order " + std::to_string(g->order()));
      return kOk;
    }

    auto t = codeg::character_table(g);
    if (*table) {
      print_table(t);
    } else if (*codegrees) {
      auto report = codeg::codegree_report(t);
      std::cout << g->name() << "  order " << g->order() << "\n";
      for (std::size_t i = 0; i < report.per_character.size(); ++i) {
        const auto& c = report.per_character[i];
        std::cout << "X." << i + 1 << "  degree " << c.degree << "  |ker| " << c.kernel_order << "  cod "
                  << c.codegree << "\n";
      }
      std::cout << "cod(G)    = " << set_string(report.cod_all) << "\n";
      std::cout << "cod(G|G') = " << set_string(codeg::cod_nonlinear(t)) << "\n";
    } else if (*graph) {
      auto set = relative.empty() ? codeg::cod_all(t) : codeg::cod_relative(t, relative_subgroup(g, relative));
      if (set.empty()) throw codeg::PreconditionError("codegree set is empty");
      std::cout << codeg::to_json(codeg::summarize(codeg::prime_graph(set))).dump(2) << "\n";
    } else if (*classify) {
      auto cert = codeg::classify(g);
      auto json = codeg::to_json(cert);
      json["group"] = g->name();
      json["order"] = g->order();
      std::cout << json.dump(2) << "\n";
      return cert.failure_reason ? kFailure : kOk;
    }
    return kOk;
  } catch (const codeg::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const codeg::PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const codeg::InvalidAction& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const codeg::OrderBoundExceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
