#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcx/io.hpp"

namespace arcx::cli {

using io::json;

namespace detail {

struct Common {
  int genus = 0;
  int boundary = 3;
  int radius = 1;
  std::size_t cap = kDefaultNodeCap;
  std::string in;
  std::string out;
  std::string format = "json";
  int threads = 1;
};

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot read " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline json read_json(const std::string& path) { return io::parse(read_file(path)); }

/// "p/q" on the torus, or comma-separated coordinates.
inline Coords parse_class(const std::string& text, Surface s) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    if (s != Surface(1, 1)) throw Error(ErrorKind::ParseError, "slopes are only for (1,1)");
    try {
      return torus_coords({std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))});
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad slope " + text);
    }
  }
  Coords c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      c.push_back(std::stoll(tok));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad coordinate " + tok);
    }
  }
  require_valid_coords(c, new_standard(s));
  return c;
}

class Output {
 public:
  Output(const Common& c, std::ostream& out) : common_(c), out_(out) {}

  void text(const std::string& s) const {
    if (common_.out.empty()) {
      out_ << s;
      return;
    }
    std::ofstream f(common_.out);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write " + common_.out);
    f << s;
  }

  void emit(const json& j) const { text(j.dump(2) + "\n"); }

 private:
  const Common& common_;
  std::ostream& out_;
};

inline void require_format(const Common& c, bool dot_allowed) {
  if (c.format == "dot" && !dot_allowed) {
    throw CLI::ValidationError("--format", "dot output is not available here");
  }
}

inline ArcComplexSlice slice_for(const Common& c, bool ball_only) {
  const Surface s{c.genus, c.boundary};
  SliceOptions opt;
  opt.threads = c.threads;
  if (!ball_only && (s == Surface(0, 2) || s == Surface(0, 3))) {
    return full_complex(s, opt);
  }
  return ball_complex(s, c.radius, opt, c.cap);
}

inline json permutation_json(const std::vector<VertexPermutation>& perms) {
  json j = json::array();
  for (const auto& p : perms) j.push_back(p);
  return j;
}

}  // namespace detail

/// Runs one command. Exit codes: 0 success, 1 domain error (JSON on
/// `err`), 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  using detail::Common;
  CLI::App app{"Triangulations, flip graphs and arc complexes of punctured surfaces", "arcx"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--genus", c.genus, "surface genus")->check(CLI::NonNegativeNumber);
    sub->add_option("--boundary", c.boundary, "number of punctures")->check(CLI::NonNegativeNumber);
    sub->add_option("--radius", c.radius, "flip-ball radius")->check(CLI::NonNegativeNumber);
    sub->add_option("--cap", c.cap, "node cap for searches")->check(CLI::PositiveNumber);
    sub->add_option("--in", c.in, "input JSON file");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--format", c.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub);
    return sub;
  };

  FlipWord word, from_word, to_word, simplex_word;
  std::string a_text, b_text, homeo_path;
  int triangle = -1, chain_from = 0, chain_to = -1;
  std::vector<int> arcs;

  auto* tri = app.add_subcommand("tri", "triangulations")->require_subcommand(1);
  auto* tri_new = leaf(tri, "new", "standard triangulation");
  auto* tri_validate = leaf(tri, "validate", "check a triangulation file");
  auto* tri_classify = leaf(tri, "classify", "embedded or self-folded triangles");
  tri_classify->add_option("--triangle", triangle, "only this triangle");
  auto* tri_config = leaf(tri, "configuration", "local pattern spanned by arcs");
  tri_config->add_option("--arcs", arcs, "arc indices")->delimiter(',')->required();
  auto* tri_separate = leaf(tri, "separate", "flips giving an embedded triangle distinct neighbors");
  tri_separate->add_option("--triangle", triangle, "embedded triangle")->required();

  auto* flp = app.add_subcommand("flip", "flips and the flip graph")->require_subcommand(1);
  auto* flip_apply = leaf(flp, "apply", "apply a flip word");
  flip_apply->add_option("--word", word, "arcs to flip, in order")->delimiter(',');
  auto* flip_ball = leaf(flp, "ball", "breadth-first ball of the flip graph");
  auto* flip_path = leaf(flp, "path", "shortest flip word between two triangulations");
  flip_path->add_option("--from", from_word, "flip word of the source")->delimiter(',');
  flip_path->add_option("--to", to_word, "flip word of the target")->delimiter(',');

  auto* arc = app.add_subcommand("arc", "arc classes")->require_subcommand(1);
  auto* arc_intersect = leaf(arc, "intersect", "geometric intersection number");
  arc_intersect->add_option("--a", a_text, "class: p/q or coordinates")->required();
  arc_intersect->add_option("--b", b_text, "class: p/q or coordinates")->required();
  auto* arc_flatten = leaf(arc, "flatten", "flip word making a class an arc");
  arc_flatten->add_option("--a", a_text, "class: p/q or coordinates")->required();

  auto* cx = app.add_subcommand("complex", "arc complex slices")->require_subcommand(1);
  auto* cx_full = leaf(cx, "full", "whole complex for (0,2) and (0,3)");
  auto* cx_ball = leaf(cx, "ball", "subcomplex spanned by a flip ball");
  auto* cx_aut = leaf(cx, "aut", "automorphisms of a slice");
  auto* cx_chain = leaf(cx, "chain", "chain of maximal simplices");
  cx_chain->add_option("--from", chain_from, "maximal simplex index");
  cx_chain->add_option("--to", chain_to, "maximal simplex index (default last)");

  auto* rg = app.add_subcommand("rigidity", "maps of the arc complex")->require_subcommand(1);
  auto* rg_induce = leaf(rg, "induce", "map induced by a homeomorphism on a ball");
  rg_induce->add_option("--homeo", homeo_path, "homeomorphism JSON")->required();
  auto* rg_check = leaf(rg, "check", "property checks on a map");
  auto* rg_reconstruct = leaf(rg, "reconstruct", "homeomorphism from one maximal simplex");
  rg_reconstruct->add_option("--simplex", simplex_word, "flip word of the simplex")->delimiter(',');
  auto* rg_verify = leaf(rg, "verify", "compare a map with a homeomorphism on a ball");
  rg_verify->add_option("--homeo", homeo_path, "homeomorphism JSON")->required();
  auto* rg_extend = leaf(rg, "extend", "surjectivity chains");
  for (auto* sub : {rg_check, rg_reconstruct, rg_verify, rg_extend}) {
    sub->get_option("--in")->required();
  }
  for (auto* sub : {tri_validate, tri_classify, tri_config, tri_separate}) {
    sub->get_option("--in")->required();
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
    for (auto* sub : {flip_ball, cx_full, cx_ball}) {
      if (sub->parsed()) detail::require_format(c, true);
    }
    for (auto* sub : {tri_new, tri_validate, tri_classify, tri_config, tri_separate, flip_apply,
                      flip_path, arc_intersect, arc_flatten, cx_aut, cx_chain, rg_induce, rg_check,
                      rg_reconstruct, rg_verify, rg_extend}) {
      if (sub->parsed()) detail::require_format(c, false);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const detail::Output output(c, out);
  const Surface surface{c.genus, c.boundary};
  try {
    if (tri_new->parsed()) {
      output.emit(io::to_json(new_standard(surface)));
    } else if (tri_validate->parsed()) {
      const json j = detail::read_json(c.in);
      const Surface s = io::surface_from_json(j);
      const auto rows = j.value("triangles", json::array());
      std::vector<TriangleSides> tris;
      for (const auto& row : rows) {
        TriangleSides t;
        for (int p = 0; p < 3 && p < static_cast<int>(row.size()); ++p) {
          t[p] = Side{row[p].at(0).get<int>(), row[p].at(1).get<int>()};
        }
        tris.push_back(t);
      }
      const Triangulation t(s, j.value("arcs", 0), std::move(tris));
      const auto report = validate(t);
      json issues = json::array();
      for (const auto& issue : report) {
        issues.push_back({{"kind", to_string(issue.kind)},
                          {"index", issue.index},
                          {"message", issue.message}});
      }
      if (!issues.empty()) {
        err << json{{"error", "ValidationError"}, {"issues", issues}}.dump(2) << "\n";
        return 1;
      }
      output.emit({{"valid", true}, {"punctures", t.puncture_count()}});
    } else if (tri_classify->parsed()) {
      const Triangulation t = io::triangulation_from_json(detail::read_json(c.in));
      json list = json::array();
      for (TriangleIndex k = 0; k < t.triangle_count(); ++k) {
        if (triangle >= 0 && k != triangle) continue;
        const TriangleClass cls = classify(t, k);
        json e{{"triangle", k}, {"class", cls.embedded() ? "embedded" : "self-folded"}};
        if (!cls.embedded()) {
          e["folded"] = cls.folded;
          e["loop"] = cls.loop;
        }
        list.push_back(std::move(e));
      }
      if (triangle >= 0) t.check_triangle(triangle);
      output.emit(list);
    } else if (tri_config->parsed()) {
      const Triangulation t = io::triangulation_from_json(detail::read_json(c.in));
      output.emit(io::to_json(detect_configuration(t, arcs)));
    } else if (tri_separate->parsed()) {
      const Triangulation t = io::triangulation_from_json(detail::read_json(c.in));
      auto [w, u] = four_distinct_neighbors(t, triangle);
      output.emit({{"flip_word", w}, {"triangulation", io::to_json(u)}});
    } else if (flip_apply->parsed()) {
      const Triangulation t = c.in.empty() ? new_standard(surface)
                                           : io::triangulation_from_json(detail::read_json(c.in));
      output.emit(io::to_json(replay(t, word)));
    } else if (flip_ball->parsed()) {
      surface.require_triangulable();
      const FlipGraphBall g = ball(surface, c.radius, c.cap);
      if (c.format == "dot") {
        output.text(io::to_dot(g));
      } else {
        output.emit(io::to_json(g));
      }
    } else if (flip_path->parsed()) {
      const auto from = witness(surface, from_word);
      const auto to = witness(surface, to_word);
      const FlipWord w = path(from, to, c.cap);
      const bool reached = witness(new_standard(surface), [&] {
                             FlipWord all = from.word;
                             all.insert(all.end(), w.begin(), w.end());
                             return all;
                           }()).key() == to.key();
      output.emit({{"flip_word", w}, {"length", w.size()}, {"reached", reached}});
    } else if (arc_intersect->parsed()) {
      surface.require_triangulable();
      const ArcClass a{surface, detail::parse_class(a_text, surface)};
      const ArcClass b{surface, detail::parse_class(b_text, surface)};
      output.emit({{"intersection", intersection(a, b)}});
    } else if (arc_flatten->parsed()) {
      surface.require_triangulable();
      const Flattening f = flatten({surface, detail::parse_class(a_text, surface)});
      output.emit({{"flip_word", f.word}, {"length", f.word.size()}, {"arc", f.arc}});
    } else if (cx_full->parsed() || cx_ball->parsed()) {
      SliceOptions opt;
      opt.threads = c.threads;
      const ArcComplexSlice s = cx_full->parsed() ? full_complex(surface, opt)
                                                  : ball_complex(surface, c.radius, opt, c.cap);
      if (c.format == "dot") {
        output.text(io::to_dot(s));
      } else {
        output.emit(io::to_json(s));
      }
    } else if (cx_aut->parsed()) {
      const ArcComplexSlice s = detail::slice_for(c, cx_aut->get_option("--radius")->count() > 0);
      const auto perms = automorphisms(s);
      output.emit({{"surface", io::to_json(surface)},
                   {"vertices", s.vertex_count()},
                   {"order", perms.size()},
                   {"automorphisms", detail::permutation_json(perms)}});
    } else if (cx_chain->parsed()) {
      const ArcComplexSlice s = detail::slice_for(c, cx_chain->get_option("--radius")->count() > 0);
      const int to = chain_to >= 0 ? chain_to : static_cast<int>(s.maximal.size()) - 1;
      const auto chain = maximal_simplex_chain(s, chain_from, to);
      json steps = json::array();
      for (int m : chain) steps.push_back(s.maximal[m].vertices);
      output.emit({{"chain", chain}, {"simplices", steps}});
    } else if (rg_induce->parsed()) {
      const CombinatorialHomeo h = io::homeo_from_json(detail::read_json(homeo_path), surface);
      SliceOptions opt;
      opt.threads = c.threads;
      const ArcComplexSlice s = ball_complex(h.surface, c.radius, opt, c.cap);
      output.emit(io::to_json(induced_map(h, s)));
    } else if (rg_check->parsed()) {
      const SimplicialSelfMap m = io::map_from_json(detail::read_json(c.in));
      if (auto cert = flag_violation(m, c.threads)) throw CertificateError(std::move(*cert));
      // Elementary-move pairs and triangles inside the domain.
      const FlipGraphBall g = ball(m.surface(), c.radius, c.cap);
      std::vector<std::pair<Coords, Coords>> pairs;
      for (auto& p : elementary_move_pairs(g)) {
        if (m.defined_at(p.first) && m.defined_at(p.second)) pairs.push_back(std::move(p));
      }
      const auto violations = check_intersection_one(m, pairs);
      if (!violations.empty()) {
        const auto& v = violations.front();
        throw CertificateError({ErrorKind::ClassMismatch, "intersection one",
                                "a once-crossing pair maps to a pair crossing " +
                                    std::to_string(v.image_intersection) + " times",
                                {v.a, v.b}, {m(v.a), m(v.b)}});
      }
      std::size_t triangles = 0, inconclusive = 0;
      std::set<std::vector<Coords>> done;
      for (const auto& node : g.nodes) {
        const Triangulation& t = node.triangulation;
        for (TriangleIndex k = 0; k < t.triangle_count(); ++k) {
          const TriangleClass cls = classify(t, k);
          std::vector<Coords> cs;
          if (cls.embedded()) {
            for (const auto& s : t.triangle(k)) cs.push_back(node.classes[s.arc]);
            std::sort(cs.begin(), cs.end());
          } else {
            cs = {node.classes[cls.folded], node.classes[cls.loop]};
          }
          bool inside = true;
          for (const auto& x : cs) inside = inside && m.defined_at(x);
          if (!inside || !done.insert(cs).second) continue;
          const TriangleCheck r = check_triangle_class_preserved(m, cs);
          if (r.status == TriangleCheck::Status::WitnessNotFound) {
            ++inconclusive;
          } else if (r.status == TriangleCheck::Status::Violated) {
            Certificate cert{ErrorKind::ClassMismatch,
                             cls.embedded() ? "embedded triangle" : "self-folded triangle",
                             r.detail, cs, {}};
            for (const auto& x : cs) cert.images.push_back(m(x));
            throw CertificateError(std::move(cert));
          }
          ++triangles;
        }
      }
      output.emit({{"injective", true},
                   {"simplicial", true},
                   {"intersection_one_pairs", pairs.size()},
                   {"triangles_checked", triangles},
                   {"triangles_inconclusive", inconclusive}});
    } else if (rg_reconstruct->parsed()) {
      const SimplicialSelfMap m = io::map_from_json(detail::read_json(c.in));
      const Reconstruction r = reconstruct(m, witness(m.surface(), simplex_word));
      json j = io::to_json(r.homeo);
      j["triangle_correspondence"] = r.triangle_correspondence;
      j["arc_correspondence"] = r.arc_correspondence;
      output.emit(j);
    } else if (rg_verify->parsed()) {
      const SimplicialSelfMap m = io::map_from_json(detail::read_json(c.in));
      const CombinatorialHomeo h = io::homeo_from_json(detail::read_json(homeo_path), m.surface());
      const auto vs = ball_vertices(ball(m.surface(), c.radius, c.cap));
      const GeometricCheck g = verify_geometric(m, h, vs);
      output.emit({{"geometric", true}, {"checked", g.checked}, {"radius", c.radius}});
    } else if (rg_extend->parsed()) {
      const SimplicialSelfMap m = io::map_from_json(detail::read_json(c.in));
      const SurjectivityReport r = surjectivity_extend(m);
      std::vector<Coords> interior;
      if (rg_extend->get_option("--radius")->count() > 0 && c.radius > 0) {
        interior = ball_vertices(ball(m.surface(), c.radius - 1, c.cap));
      }
      std::size_t hit = 0;
      for (const auto& v : interior) {
        hit += std::binary_search(r.covered.begin(), r.covered.end(), v);
      }
      json j{{"covered", r.covered},
             {"covered_count", r.covered.size()},
             {"simplices_visited", r.simplices_visited},
             {"chains_leaving", r.chains_leaving}};
      if (!interior.empty()) {
        j["interior_count"] = interior.size();
        j["interior_covered"] = hit;
      }
      output.emit(j);
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << io::error_json(e).dump(2) << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << json{{"error", "ParseError"}, {"detail", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace arcx::cli
