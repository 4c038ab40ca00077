// Command-line front end for the ohba list-coloring toolkit.
//
// Exit codes: 0 verdict computed, 1 certificate rejected, 2 input error,
// 3 resource guard, 4 internal consistency alert.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ohba/io.hpp"

namespace {

enum Exit { ok = 0, rejected = 1, input_error = 2, resource = 3, alert = 4 };

struct Globals {
  int threads = 1;
  std::string format = "text";
  bool structured() const { return format == "structured"; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ohba::Error(ohba::Error::Kind::invalid_input, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ohba::Instance load(const std::string& path) {
  try {
    return ohba::parse_instance(slurp(path));
  } catch (const ohba::Error& e) {
    throw ohba::Error(e.kind(), path + ": " + e.what());
  }
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ohba::Error(ohba::Error::Kind::invalid_input, "cannot write " + path);
  out << text;
}

std::string verdict_line(const ohba::Certificate& c) {
  if (std::holds_alternative<ohba::Coloring>(c)) return "colorable";
  return "not colorable";
}

int report_exit(const ohba::CensusReport& r, const Globals& g) {
  if (g.structured()) {
    std::cout << ohba::emit_report(r);
  } else {
    std::cout << r.name << " on K_{" << r.shape << "}, k=" << r.k << '\n'
              << "  assignments: " << r.total << "\n  bad: " << r.bad
              << "\n  bad isomorphism classes: " << r.classes.size() << '\n';
    for (const auto& c : r.classes) {
      std::cout << "    " << c.form << "  x" << c.members << "  " << c.witness << '\n';
    }
    for (const auto& [key, value] : r.extra) std::cout << "  " << key << ": " << value << '\n';
    if (r.seed) std::cout << "  seed: " << *r.seed << '\n';
    for (const auto& a : r.alerts) std::cout << "  ALERT " << a << '\n';
    std::cout << "  time: " << static_cast<long long>(r.wall_ms) << " ms\n";
  }
  return r.alerts.empty() ? ok : alert;
}

std::vector<int> parse_indices(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ohba::Error(ohba::Error::Kind::invalid_input, "bad part index '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"List-coloring toolkit for complete multipartite graphs"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--threads", globals.threads, "Worker threads for censuses")
      ->check(CLI::Range(1, 256));
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  // solve
  std::string input, output, method = "both";
  auto* solve = app.add_subcommand("solve", "Decide colorability and print a certificate");
  solve->add_option("-i,--input", input, "Instance file")->required();
  solve->add_option("-o,--output", output, "Write the certificate here");
  solve->add_option("--method", method, "Solver")->check(CLI::IsMember({"generic", "partitions", "both"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Print a structured instance");
  gen->require_subcommand(1);
  int k = 4, a1 = -1, a3 = 0, first_color = 1;
  std::string variant = "disjoint";
  auto* gen_u4 = gen->add_subcommand("unique4", "Structured bad assignment of K_{4,2*(k-1)}");
  gen_u4->add_option("--k", k, "List size (even)");
  gen_u4->add_option("--a1", a1, "|A1| = |A2| (default k/2)");
  gen_u4->add_option("--a3", a3, "|A3| = |A4|");
  gen_u4->add_option("--first-color", first_color, "Smallest color used");
  auto* gen_k33 = gen->add_subcommand("k33", "Bad 2-assignment of K_{3,3}");
  gen_k33->add_option("--variant", variant, "Variant")
      ->check(CLI::IsMember({"disjoint", "overlap1", "overlap2"}));
  auto* gen_u3 = gen->add_subcommand("unique3", "Bad assignment of K_{3*(k/2+1),1*(k/2-1)}");
  gen_u3->add_option("--k", k, "List size (even, >= 4)");
  auto* gen_gstar = gen->add_subcommand("gstar", "The graph G* with its bad assignment");
  gen_gstar->add_option("--k", k, "List size (even, >= 4)");
  for (auto* sub : {gen_u4, gen_k33, gen_u3, gen_gstar}) {
    sub->add_option("-o,--output", output, "Write the instance here");
  }

  // recognize
  auto* recognize = app.add_subcommand("recognize", "Match an assignment against a structure");
  recognize->require_subcommand(1);
  auto* rec_u4 = recognize->add_subcommand("unique4", "Structured form of K_{4,2*(k-1)}");
  auto* rec_u3 = recognize->add_subcommand("unique3", "Color-count condition of K_{3*(k/2+1),1*(k/2-1)}");
  for (auto* sub : {rec_u4, rec_u3}) sub->add_option("-i,--input", input, "Instance file")->required();

  // ind3
  bool search = false;
  std::string low_csv, high_csv;
  auto* ind3 = app.add_subcommand("ind3", "Check the sufficient condition for f-choosability (f = list sizes)");
  ind3->add_option("-i,--input", input, "Instance file")->required();
  ind3->add_flag("--search", search, "Search every classification of the singleton parts");
  ind3->add_option("--low", low_csv, "Singleton parts of the low class, in order");
  ind3->add_option("--high", high_csv, "Singleton parts of the high class, in order");

  // census
  std::string census_name;
  auto* census = app.add_subcommand("census", "Run an exhaustive census");
  census->add_option("name", census_name, "Census")
      ->required()
      ->check(CLI::IsMember({"k33", "unique3-forward", "unique4-forward", "subgraphs-k33"}));
  census->add_option("--k", k, "List size for the forward censuses");

  // sample
  std::string profile;
  int trials = 0;
  std::uint64_t seed = 0;
  auto* sample = app.add_subcommand("sample", "Seeded sampling of a converse direction");
  sample->add_option("profile", profile, "Profile")
      ->required()
      ->check(CLI::IsMember({"unique3-converse", "unique4-converse", "unique4-perturb"}));
  sample->add_option("--trials", trials, "Number of samples")->required();
  sample->add_option("--seed", seed, "Seed")->required();
  sample->add_option("--k", k, "List size (even, >= 4)");

  // verify-cert
  std::string cert_path;
  auto* verify = app.add_subcommand("verify-cert", "Independently check a certificate");
  verify->add_option("-i,--input", input, "Instance file")->required();
  verify->add_option("-c,--cert", cert_path, "Certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (*solve) {
      const auto inst = load(input);
      ohba::Certificate cert;
      if (method == "generic") {
        auto c = ohba::solve_generic(inst.graph, inst.lists);
        cert = c ? ohba::Certificate(*c) : ohba::Certificate(ohba::SearchExhausted{});
      } else if (method == "partitions") {
        cert = ohba::to_certificate(ohba::solve_by_partitions(inst.graph, inst.lists));
      } else {
        const auto generic = ohba::solve_generic(inst.graph, inst.lists);
        bool partitions_ok = inst.graph.is_complete_multipartite();
        for (int s : inst.graph.part_sizes()) partitions_ok = partitions_ok && s <= 4;
        if (partitions_ok) {
          cert = ohba::to_certificate(ohba::solve_by_partitions(inst.graph, inst.lists));
          if (ohba::is_colorable(cert) != generic.has_value()) {
            std::cerr << "ALERT: solvers disagree\n";
            return alert;
          }
        } else {
          cert = generic ? ohba::Certificate(*generic) : ohba::Certificate(ohba::SearchExhausted{});
        }
      }
      if (!ohba::verify_certificate(inst, cert)) {
        std::cerr << "ALERT: produced certificate failed verification\n";
        return alert;
      }
      const std::string text = ohba::emit_certificate(cert);
      if (!output.empty()) {
        write_out(text, output);
        std::cout << verdict_line(cert) << '\n';
      } else if (globals.structured()) {
        std::cout << text;
      } else {
        std::cout << verdict_line(cert) << '\n';
        if (const auto* c = std::get_if<ohba::Coloring>(&cert)) {
          for (std::size_t v = 0; v < c->color.size(); ++v) {
            std::cout << "  " << v << " -> " << c->color[v] << '\n';
          }
        } else if (const auto* nc = std::get_if<ohba::NonColorability>(&cert)) {
          std::cout << "  " << nc->violators.size() << " groupings, each with a Hall violator\n";
        }
      }
      return ok;
    }

    if (*gen) {
      ohba::Instance inst;
      if (*gen_u4) {
        inst = ohba::make_unique4(
            ohba::Unique4Spec::standard(k, a1 < 0 ? k / 2 - a3 : a1, a3, first_color));
      } else if (*gen_k33) {
        const auto v = variant == "disjoint"   ? ohba::K33Variant::disjoint
                       : variant == "overlap1" ? ohba::K33Variant::overlap1
                                               : ohba::K33Variant::overlap2;
        inst = ohba::make_k33_bad(v);
      } else if (*gen_u3) {
        inst = ohba::make_unique3(k);
      } else {
        inst = ohba::make_gstar(k);
      }
      write_out(ohba::emit_instance(inst), output);
      return ok;
    }

    if (*recognize) {
      const auto inst = load(input);
      if (*rec_u4) {
        const auto w = ohba::structure_match_unique4(inst.graph, inst.lists);
        if (!w) {
          std::cout << "structured: no\n";
          return ok;
        }
        const auto& b = w->blocks;
        auto set = [](ohba::ColorSet s) { return "{" + ohba::detail::join_members(s) + "}"; };
        std::cout << "structured: yes\n"
                  << "roles: u1=" << w->big_part[0] << " v1=" << w->big_part[1]
                  << " x1=" << w->big_part[2] << " y1=" << w->big_part[3] << '\n'
                  << "a1: " << b.a1 << "\na3: " << b.a3 << '\n'
                  << "A1: " << set(b.a_blocks[0]) << "\nA2: " << set(b.a_blocks[1])
                  << "\nA3: " << set(b.a_blocks[2]) << "\nA4: " << set(b.a_blocks[3])
                  << "\nB1: " << set(b.b_blocks[0]) << "\nB2: " << set(b.b_blocks[1]) << '\n';
      } else {
        const bool m = ohba::condition_match_unique3(inst.graph, inst.lists);
        std::cout << "condition: " << (m ? "yes" : "no") << "\ncolors: "
                  << ohba::popcount(inst.lists.colors()) << '\n';
      }
      return ok;
    }

    if (*ind3) {
      const auto inst = load(input);
      std::vector<int> f;
      for (ohba::ColorSet l : inst.lists.lists()) f.push_back(ohba::popcount(l));
      std::optional<ohba::Ind3Instance> found;
      if (search) {
        found = ohba::ind3_search(inst.graph, f);
      } else {
        ohba::Ind3Instance candidate{inst.graph, parse_indices(low_csv), parse_indices(high_csv), f};
        if (ohba::ind3_check(candidate)) found = candidate;
      }
      std::cout << "condition: " << (found ? "holds" : "fails") << '\n';
      if (found) {
        auto list = [](const std::vector<int>& vs) {
          std::string s;
          for (int v : vs) s += (s.empty() ? "" : ",") + std::to_string(v);
          return s.empty() ? std::string("-") : s;
        };
        std::cout << "low: " << list(found->low) << "\nhigh: " << list(found->high) << '\n';
      }
      return ok;
    }

    if (*census) {
      ohba::CensusReport r;
      if (census_name == "k33") r = ohba::census_k33(globals.threads);
      else if (census_name == "unique3-forward") r = ohba::census_unique3_forward(k, globals.threads);
      else if (census_name == "unique4-forward") r = ohba::census_unique4_forward(k, globals.threads);
      else r = ohba::census_k33_subgraphs();
      return report_exit(r, globals);
    }

    if (*sample) {
      const auto p = profile == "unique3-converse"   ? ohba::SampleProfile::unique3_converse
                     : profile == "unique4-converse" ? ohba::SampleProfile::unique4_converse
                                                     : ohba::SampleProfile::unique4_perturb;
      return report_exit(ohba::sample_converse(p, trials, seed, k, globals.threads), globals);
    }

    if (*verify) {
      const auto inst = load(input);
      const auto cert = ohba::parse_certificate(slurp(cert_path));
      const bool valid = ohba::verify_certificate(inst, cert);
      std::cout << (valid ? "valid" : "invalid") << ' ' << verdict_line(cert) << '\n';
      return valid ? ok : rejected;
    }
  } catch (const ohba::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ohba::Error::Kind::resource ? resource : input_error;
  }
  return ok;
}
