#include "flimit/cli.hpp"

#include <fstream>
#include <memory>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flimit/io.hpp"
#include "flimit/solvers.hpp"

namespace flimit {

namespace {

using nlohmann::json;

struct Ctx {
  SymbolTable symbols;
  std::vector<std::string> symbol_files;
  bool as_json = false;
  bool parallel = false;
  std::ostream* out = nullptr;

  void load_symbol_files() {
    for (const std::string& path : symbol_files) {
      std::ifstream in(path);
      if (!in) fail(Errc::BadInput, "cannot open symbol file '" + path + "'");
      json j;
      in >> j;
      load_symbols(symbols, j);
    }
  }
  Exec exec() const { return parallel ? Exec::Parallel : Exec::Serial; }

  void emit(const std::string& text, const json& structured) {
    if (as_json)
      *out << structured.dump(2) << "\n";
    else
      *out << text << "\n";
  }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<Dyadic> parse_dyadic_list(const std::string& csv) {
  std::vector<Dyadic> out;
  for (const std::string& s : split_list(csv)) out.push_back(parse_dyadic(s));
  return out;
}

PLHomeo resolve_constant(Ctx& ctx, const std::string& text) {
  FWord w = parse_word(text, ctx.symbols);
  if (w.has_variable()) fail(Errc::BadInput, "expected a constant expression: " + text);
  return evaluate_word(w, {});
}

std::string dyadic_list_str(const std::vector<Dyadic>& v) {
  std::string s;
  for (const Dyadic& d : v) {
    if (!s.empty()) s += " ";
    s += d.str();
  }
  return s;
}

MembershipOracle make_oracle(Ctx& ctx, const std::string& kind, const std::string& cyclic_h) {
  if (kind == "hlt1") return oracle_h_lt1();
  if (kind == "cyclic") {
    if (cyclic_h.empty()) fail(Errc::BadInput, "--cyclic-h is required for the cyclic oracle");
    return oracle_cyclic(resolve_constant(ctx, cyclic_h));
  }
  fail(Errc::BadInput, "unknown oracle '" + kind + "'");
}

void add_f_commands(CLI::App& app, Ctx& ctx) {
  auto* f = app.add_subcommand("f", "piecewise-linear elements");
  f->require_subcommand(1);

  struct FOpts {
    std::string elem, other, point, a, b, s, t;
  };
  auto p = std::make_shared<FOpts>();

  auto* eval = f->add_subcommand("eval", "evaluate an element at a point");
  eval->add_option("--elem", p->elem)->required();
  eval->add_option("--point", p->point)->required();
  eval->callback([&ctx, p] {
    ctx.load_symbol_files();
    Rational q = resolve_constant(ctx, p->elem)(parse_rational(p->point));
    ctx.emit(q.str(), json{{"value", q.str()}});
  });

  auto* comp = f->add_subcommand("compose", "product, right factor applied first");
  comp->add_option("--elem", p->elem)->required();
  comp->add_option("--with", p->other)->required();
  comp->callback([&ctx, p] {
    ctx.load_symbol_files();
    PLHomeo r = resolve_constant(ctx, p->elem) * resolve_constant(ctx, p->other);
    ctx.emit(r.str(), element_to_json(r));
  });

  auto* inv = f->add_subcommand("inv", "inverse element");
  inv->add_option("--elem", p->elem)->required();
  inv->callback([&ctx, p] {
    ctx.load_symbol_files();
    PLHomeo r = resolve_constant(ctx, p->elem).inverse();
    ctx.emit(r.str(), element_to_json(r));
  });

  auto* supp = f->add_subcommand("supp", "support of an element");
  supp->add_option("--elem", p->elem)->required();
  supp->callback([&ctx, p] {
    ctx.load_symbol_files();
    IntervalSet s = support(resolve_constant(ctx, p->elem));
    ctx.emit(s.str(), interval_set_to_json(s));
  });

  auto* defrag = f->add_subcommand("defrag", "defragmentation into commuting pieces");
  defrag->add_option("--elem", p->elem)->required();
  defrag->callback([&ctx, p] {
    ctx.load_symbol_files();
    auto frags = defragmentation(resolve_constant(ctx, p->elem));
    std::string text;
    json arr = json::array();
    for (const PLHomeo& g : frags) {
      text += (text.empty() ? "" : "\n") + g.str();
      arr.push_back(element_to_json(g));
    }
    ctx.emit(frags.empty() ? "(no fragments)" : text, json{{"fragments", arr}});
  });

  auto* divp = f->add_subcommand("divpoints", "dividing points");
  divp->add_option("--elem", p->elem)->required();
  divp->callback([&ctx, p] {
    ctx.load_symbol_files();
    auto pts = dividing_points(resolve_constant(ctx, p->elem));
    json arr = json::array();
    for (const Dyadic& d : pts) arr.push_back(d.str());
    ctx.emit(dyadic_list_str(pts), json{{"points", arr}});
  });

  auto* pm = f->add_subcommand("partition-map", "map one dyadic partition onto another");
  pm->add_option("--from", p->s)->required();
  pm->add_option("--to", p->t)->required();
  pm->callback([&ctx, p] {
    ctx.load_symbol_files();
    PLHomeo r = partition_map(parse_dyadic_list(p->s), parse_dyadic_list(p->t));
    ctx.emit(r.str(), element_to_json(r));
  });

  auto* io = f->add_subcommand("iota", "rescale into a dyadic interval");
  io->add_option("--a", p->a)->required();
  io->add_option("--b", p->b)->required();
  io->add_option("--elem", p->elem)->required();
  io->callback([&ctx, p] {
    ctx.load_symbol_files();
    PLHomeo r = iota(parse_dyadic(p->a), parse_dyadic(p->b), resolve_constant(ctx, p->elem));
    ctx.emit(r.str(), element_to_json(r));
  });

  auto* isp = f->add_subcommand("ispower", "exponent k with f = h^k, if any");
  isp->add_option("--f", p->elem)->required();
  isp->add_option("--h", p->other)->required();
  isp->callback([&ctx, p] {
    ctx.load_symbol_files();
    auto k = is_power(resolve_constant(ctx, p->elem), resolve_constant(ctx, p->other));
    ctx.emit(k ? std::to_string(*k) : "none",
             json{{"power", k ? json(*k) : json(nullptr)}});
  });
}

void add_word_commands(CLI::App& app, Ctx& ctx) {
  auto* wc = app.add_subcommand("word", "words with constants");
  wc->require_subcommand(1);

  struct WordOpts {
    std::string word, args, region;
    std::uint64_t samples = 1000, seed = 1;
    unsigned len = 20;
  };
  auto p = std::make_shared<WordOpts>();

  auto* parse = wc->add_subcommand("parse", "parse and freely reduce");
  parse->add_option("--word", p->word)->required();
  parse->callback([&ctx, p] {
    ctx.load_symbol_files();
    FWord w = parse_word(p->word, ctx.symbols);
    ctx.emit(word_str(w), json{{"word", word_str(w)},
                               {"letters", w.letters.size()},
                               {"arity", w.arity}});
  });

  auto* red = wc->add_subcommand("reduce", "block form u_n v_n ... u_1 v_1");
  red->add_option("--word", p->word)->required();
  red->callback([&ctx, p] {
    ctx.load_symbol_files();
    FWord w = parse_word(p->word, ctx.symbols);
    FReducedForm rf = to_reduced_form(w);
    std::string text = "blocks: " + std::to_string(rf.block_count());
    json blocks = json::array();
    for (auto it = rf.blocks.rbegin(); it != rf.blocks.rend(); ++it) {
      std::string u;
      for (const VarLetter& v : it->u)
        u += "y" + std::to_string(v.index) + (v.sign < 0 ? "^-1 " : " ");
      text += "\n  u=" + (u.empty() ? "1" : u) + " v=" + it->v.str();
      blocks.push_back({{"u", u}, {"v", element_to_json(it->v)}});
    }
    text += "\n  conjugator: " + word_str(rf.conjugator);
    ctx.emit(text, json{{"blocks", blocks},
                        {"pure_variable", rf.is_pure_variable()},
                        {"conjugator", word_str(rf.conjugator)},
                        {"constants_product_nontrivial", rf.has_nontrivial_constant_product()}});
  });

  auto* ow = wc->add_subcommand("ow", "oscillation region O_w");
  ow->add_option("--word", p->word)->required();
  ow->callback([&ctx, p] {
    ctx.load_symbol_files();
    IntervalSet o = omega_set(to_reduced_form(parse_word(p->word, ctx.symbols)));
    ctx.emit(o.str(), interval_set_to_json(o));
  });

  auto* osc = wc->add_subcommand("oscillating", "explicit oscillation in a region");
  osc->add_option("--word", p->word)->required();
  osc->add_option("--region", p->region, "comma list lo,hi[,lo,hi...] of closed intervals");
  osc->callback([&ctx, p] {
    ctx.load_symbol_files();
    IntervalSet v = IntervalSet::of(closed_iv(Rational(0), Rational(1)));
    if (!p->region.empty()) {
      auto ends = split_list(p->region);
      if (ends.size() % 2) fail(Errc::BadInput, "--region needs pairs of endpoints");
      std::vector<Interval> parts;
      for (size_t i = 0; i + 1 < ends.size(); i += 2)
        parts.push_back(closed_iv(parse_rational(ends[i]), parse_rational(ends[i + 1])));
      v = IntervalSet(parts);
    }
    bool r = is_explicitly_oscillating(to_reduced_form(parse_word(p->word, ctx.symbols)), v);
    ctx.emit(r ? "true" : "false", json{{"oscillating", r}});
  });

  auto* ev = wc->add_subcommand("eval", "substitute elements for variables");
  ev->add_option("--word", p->word)->required();
  ev->add_option("--args", p->args)->required();
  ev->callback([&ctx, p] {
    ctx.load_symbol_files();
    FWord w = parse_word(p->word, ctx.symbols);
    std::vector<PLHomeo> args;
    for (const std::string& a : split_list(p->args)) args.push_back(resolve_constant(ctx, a));
    PLHomeo r = evaluate_word(w, args);
    ctx.emit(r.str(), element_to_json(r));
  });

  auto* law = wc->add_subcommand("law-check", "sampled refutation of a law claim");
  law->add_option("--word", p->word)->required();
  law->add_option("--samples", p->samples)->required();
  law->add_option("--seed", p->seed)->required();
  law->add_option("--len", p->len, "max letters per sampled element");
  law->callback([&ctx, p] {
    ctx.load_symbol_files();
    FWord w = parse_word(p->word, ctx.symbols);
    LawCheck r = is_law_sampled(w, p->seed, p->len, p->samples, ctx.exec());
    if (r.holds) {
      ctx.emit("law held on " + std::to_string(p->samples) + " samples",
               json{{"holds", true}, {"samples", p->samples}});
    } else {
      json args = json::array();
      std::string text = "counterexample at sample " + std::to_string(r.counterexample_index);
      for (const PLHomeo& g : r.counterexample) {
        args.push_back(element_to_json(g));
        text += "\n  " + g.str();
      }
      ctx.emit(text, json{{"holds", false},
                          {"index", r.counterexample_index},
                          {"counterexample", args}});
    }
  });
}

void add_solve_commands(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("solve", "inequality solvers");
  sc->require_subcommand(1);

  struct SolveOpts {
    std::vector<std::string> words, regions;
    std::string h, e, commute, support_region;
    std::uint64_t seed = 1, budget = 2000;
    unsigned len = 6;
  };
  auto p = std::make_shared<SolveOpts>();

  auto* iva = sc->add_subcommand("iva", "nontrivial-constant-product systems");
  iva->add_option("--word", p->words)->required();
  iva->add_option("--h", p->h, "comma list of generators of H")->required();
  iva->callback([&ctx, p] {
    ctx.load_symbol_files();
    std::vector<FWord> words;
    for (const std::string& s : p->words) words.push_back(parse_word(s, ctx.symbols));
    std::vector<PLHomeo> h;
    for (const std::string& s : split_list(p->h)) h.push_back(resolve_constant(ctx, s));
    IvaSolution sol = solve_nontrivial_product(words, h);
    std::string text = "U = [" + sol.u_lo.str() + ", " + sol.u_hi.str() + "]";
    json tuple = json::array();
    for (size_t i = 0; i < sol.tuple.size(); ++i) {
      text += "\ng" + std::to_string(i + 1) + " = " + sol.tuple[i].str();
      tuple.push_back(element_to_json(sol.tuple[i]));
    }
    json forb = json::array();
    for (const Rational& q : sol.forbidden) forb.push_back(q.str());
    ctx.emit(text, json{{"u", {sol.u_lo.str(), sol.u_hi.str()}},
                        {"tuple", tuple},
                        {"forbidden", forb}});
  });

  auto* h1 = sc->add_subcommand("h1", "commutations plus inequalities near 1");
  h1->add_option("--w", p->words, "inequality words (one variable)");
  h1->add_option("--e", p->e, "comma list of elements to commute with");
  h1->add_option("--budget", p->budget)->required();
  h1->callback([&ctx, p] {
    ctx.load_symbol_files();
    std::vector<FWord> words;
    for (const std::string& s : p->words) words.push_back(parse_word(s, ctx.symbols));
    std::vector<PLHomeo> e;
    if (!p->e.empty())
      for (const std::string& s : split_list(p->e)) e.push_back(resolve_constant(ctx, s));
    H1Solution sol = solve_h1(e, words, p->budget);
    std::string text = "g = " + sol.g.str() + "\nk = " + std::to_string(sol.k);
    for (const std::string& line : sol.verified) text += "\nverified: " + line;
    ctx.emit(text, json{{"g", element_to_json(sol.g)},
                        {"k", sol.k},
                        {"verified", sol.verified}});
  });

  auto* osc = sc->add_subcommand("oscillating", "explicitly oscillating systems");
  osc->add_option("--word", p->words)->required();
  osc->add_option("--region", p->regions, "open region lo,hi per word")->required();
  osc->add_option("--commute", p->commute, "optional comma list of commutation targets");
  osc->add_option("--support-region", p->support_region, "optional lo,hi support constraint");
  osc->add_option("--seed", p->seed)->required();
  osc->add_option("--budget", p->budget)->required();
  osc->callback([&ctx, p] {
    ctx.load_symbol_files();
    InequalitySystem sys;
    for (const std::string& s : p->words) sys.words.push_back(parse_word(s, ctx.symbols));
    if (!p->commute.empty())
      for (const std::string& s : split_list(p->commute))
        sys.commute_with.push_back(resolve_constant(ctx, s));
    if (!p->support_region.empty()) {
      auto ends = split_list(p->support_region);
      if (ends.size() != 2) fail(Errc::BadInput, "--support-region needs lo,hi");
      sys.support_region =
          IntervalSet::of(open_iv(parse_rational(ends[0]), parse_rational(ends[1])));
    }
    std::vector<IntervalSet> regions;
    for (const std::string& r : p->regions) {
      auto ends = split_list(r);
      if (ends.size() != 2) fail(Errc::BadInput, "--region needs lo,hi");
      regions.push_back(IntervalSet::of(open_iv(parse_rational(ends[0]), parse_rational(ends[1]))));
    }
    auto sol = solve_explicit_oscillating(sys, regions, p->seed, p->budget);
    if (!sol) {
      ctx.emit("no solution within budget", json{{"found", false}});
      return;
    }
    std::string text;
    json tuple = json::array();
    for (size_t i = 0; i < sol->size(); ++i) {
      text += (i ? "\n" : "") + ("g" + std::to_string(i + 1) + " = " + (*sol)[i].str());
      tuple.push_back(element_to_json((*sol)[i]));
    }
    ctx.emit(text, json{{"found", true}, {"tuple", tuple}});
  });

  auto* fp = sc->add_subcommand("free-pair", "bounded free-pair certificate");
  fp->add_option("--h", p->h)->required();
  fp->add_option("--len", p->len)->required();
  fp->add_option("--seed", p->seed)->required();
  fp->add_option("--budget", p->budget);
  fp->callback([&ctx, p] {
    ctx.load_symbol_files();
    PLHomeo g = free_pair_witness(resolve_constant(ctx, p->h), p->len, p->seed, p->budget);
    ctx.emit("g = " + g.str(), json{{"g", element_to_json(g)}, {"checked_length", p->len}});
  });
}

void add_limits_commands(CLI::App& app, Ctx& ctx) {
  auto* lc = app.add_subcommand("limits", "marked groups and the relation metric");
  lc->require_subcommand(1);

  struct LimitOpts {
    std::string markers, file_a, file_b;
    std::vector<std::string> files;
    unsigned rmax = 6, n = 3;
  };
  auto p = std::make_shared<LimitOpts>();

  auto* rel = lc->add_subcommand("relations", "relation ball of a marking");
  rel->add_option("--rmax", p->rmax)->required();
  rel->add_option("--markers", p->markers, "comma list of F elements");
  rel->add_option("file", p->file_a, "marked tuple JSON file");
  rel->callback([&ctx, p] {
    ctx.load_symbol_files();
    std::vector<AbstractWord> rels;
    if (!p->markers.empty()) {
      MarkedTuple<PLHomeo> m;
      for (const std::string& s : split_list(p->markers))
        m.markers.push_back(resolve_constant(ctx, s));
      rels = relations_up_to(m, p->rmax, ctx.exec());
    } else if (!p->file_a.empty()) {
      json j = read_json_file(p->file_a);
      if (marked_backend(j) == "f")
        rels = relations_up_to(marked_f_from_json(j), p->rmax, ctx.exec());
      else
        rels = relations_up_to(marked_grig_from_json(j), p->rmax, ctx.exec());
    } else {
      fail(Errc::BadInput, "need --markers or a marked tuple file");
    }
    std::string text = rels.empty() ? "(none)" : "";
    json arr = json::array();
    for (const AbstractWord& w : rels) {
      text += (text.empty() ? "" : "\n") + abstract_word_str(w);
      arr.push_back(abstract_word_str(w));
    }
    if (rels.empty()) text = "(none)";
    ctx.emit(text, json{{"relations", arr}});
  });

  auto* dist = lc->add_subcommand("distance", "symbolic distance between markings");
  dist->add_option("--rmax", p->rmax)->required();
  dist->add_option("a", p->file_a)->required();
  dist->add_option("b", p->file_b)->required();
  dist->callback([&ctx, p] {
    ctx.load_symbol_files();
    json ja = read_json_file(p->file_a);
    json jb = read_json_file(p->file_b);
    if (marked_backend(ja) != marked_backend(jb))
      fail(Errc::BadInput, "marked tuples use different backends");
    MarkedDistance d;
    if (marked_backend(ja) == "f")
      d = distance(marked_f_from_json(ja), marked_f_from_json(jb), p->rmax, ctx.exec());
    else
      d = distance(marked_grig_from_json(ja), marked_grig_from_json(jb), p->rmax, ctx.exec());
    ctx.emit(d.str(), json{{"distance", d.str()},
                           {"radius", d.radius},
                           {"saturated", d.saturated}});
  });

  auto* seq = lc->add_subcommand("h1-seq", "one step of the limit sequence");
  seq->add_option("--n", p->n)->required();
  seq->callback([&ctx, p] {
    ctx.load_symbol_files();
    H1Step step = h1_sequence(p->n);
    bool ok = check_atomic_type(step.constraints, {step.g});
    std::string text = "g_" + std::to_string(p->n) + " = " + step.g.str() + "\nk = " +
                       std::to_string(step.k) +
                       "\natomic type check: " + (ok ? "pass" : "fail");
    ctx.emit(text, json{{"n", p->n},
                        {"g", element_to_json(step.g)},
                        {"k", step.k},
                        {"atomic_type_ok", ok}});
  });

  auto* rep = lc->add_subcommand("report", "pairwise agreement radii");
  rep->add_option("--rmax", p->rmax)->required();
  rep->add_option("--n", p->n, "use the first n limit-sequence steps");
  rep->add_option("files", p->files, "marked tuple JSON files");
  rep->callback([&ctx, p] {
    ctx.load_symbol_files();
    std::vector<MarkedTuple<PLHomeo>> seq_f;
    if (!p->files.empty()) {
      for (const std::string& f : p->files) seq_f.push_back(marked_f_from_json(read_json_file(f)));
    } else {
      for (unsigned i = 1; i <= p->n; ++i) seq_f.push_back(h1_sequence(i).tuple);
    }
    auto entries = converge_report(seq_f, p->rmax, ctx.exec());
    std::string text = "i j radius";
    json arr = json::array();
    for (const ConvergeEntry& e : entries) {
      text += "\n" + std::to_string(e.i) + " " + std::to_string(e.j) + " " +
              std::to_string(e.radius);
      arr.push_back({{"i", e.i}, {"j", e.j}, {"radius", e.radius}});
    }
    ctx.emit(text, json{{"entries", arr}, {"rmax", p->rmax}});
  });
}

void add_hnn_commands(CLI::App& app, Ctx& ctx) {
  auto* hc = app.add_subcommand("hnn", "stable-letter words and Britton reduction");
  hc->require_subcommand(1);

  struct HnnOpts {
    std::string word, oracle = "hlt1", cyclic_h;
  };
  auto p = std::make_shared<HnnOpts>();

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--word", p->word)->required();
    cmd->add_option("--oracle", p->oracle, "hlt1 or cyclic");
    cmd->add_option("--cyclic-h", p->cyclic_h, "generator for the cyclic oracle");
  };

  auto* red = hc->add_subcommand("reduce", "Britton reduction");
  add_common(red);
  red->callback([&ctx, p] {
    ctx.load_symbol_files();
    HnnWord w = parse_hnn(p->word, ctx.symbols);
    HnnWord r = britton_reduce(w, make_oracle(ctx, p->oracle, p->cyclic_h));
    ctx.emit(r.str(), hnn_to_json(r));
  });

  auto* triv = hc->add_subcommand("trivial", "triviality in the extension");
  add_common(triv);
  triv->callback([&ctx, p] {
    ctx.load_symbol_files();
    HnnWord w = parse_hnn(p->word, ctx.symbols);
    Triviality t = is_trivial_in_hnn(w, make_oracle(ctx, p->oracle, p->cyclic_h));
    ctx.emit(triviality_str(t), json{{"trivial", triviality_str(t)}});
  });
}

void add_grig_commands(CLI::App& app, Ctx& ctx) {
  auto* gc = app.add_subcommand("grig", "the first Grigorchuk group");
  gc->require_subcommand(1);

  struct GrigOpts {
    std::string word, vertex, h1, h2, h3;
    unsigned max_exp = 20, depth = 6;
    std::uint64_t budget = 100000, samples = 1000, seed = 1;
  };
  auto p = std::make_shared<GrigOpts>();

  auto* wp = gc->add_subcommand("wp", "word problem");
  wp->add_option("--word", p->word)->required();
  wp->callback([&ctx, p] {
    bool id = parse_grig(p->word).is_identity();
    ctx.emit(id ? "identity" : "nontrivial", json{{"identity", id}});
  });

  auto* act_cmd = gc->add_subcommand("act", "action on a vertex");
  act_cmd->add_option("--word", p->word)->required();
  act_cmd->add_option("--vertex", p->vertex)->required();
  act_cmd->callback([&ctx, p] {
    Vertex v = act(parse_grig(p->word), p->vertex);
    ctx.emit(v, json{{"vertex", v}});
  });

  auto* ord = gc->add_subcommand("order", "order via repeated squaring");
  ord->add_option("--word", p->word)->required();
  ord->add_option("--max-exp", p->max_exp);
  ord->callback([&ctx, p] {
    auto o = order(parse_grig(p->word), p->max_exp);
    ctx.emit(o ? std::to_string(*o) : "exceeds budget",
             json{{"order", o ? json(*o) : json(nullptr)}});
  });

  auto* sig = gc->add_subcommand("sigma", "apply the substitution");
  sig->add_option("--word", p->word)->required();
  sig->callback([&ctx, p] {
    GrigWord w = sigma_substitute(parse_grig(p->word));
    ctx.emit(w.letters().empty() ? "1" : w.letters(), json{{"word", w.letters()}});
  });

  auto* rist = gc->add_subcommand("rist", "rigid stabilizer element");
  rist->add_option("--vertex", p->vertex)->required();
  rist->add_option("--budget", p->budget);
  rist->callback([&ctx, p] {
    GrigWord w = rist_element(p->vertex, p->budget);
    ctx.emit(w.letters(), json{{"word", w.letters()}});
  });

  auto* mc = gc->add_subcommand("mixed-check", "sampled branch mixed identity");
  mc->add_option("--h1", p->h1)->required();
  mc->add_option("--h2", p->h2)->required();
  mc->add_option("--h3", p->h3)->required();
  mc->add_option("--samples", p->samples)->required();
  mc->add_option("--seed", p->seed)->required();
  mc->add_option("--depth", p->depth);
  mc->callback([&ctx, p] {
    BranchCheck r = branch_mixed_identity_check(parse_grig(p->h1), parse_grig(p->h2),
                                                parse_grig(p->h3), p->samples, p->depth, p->seed);
    if (r.holds)
      ctx.emit("held on " + std::to_string(p->samples) + " samples", json{{"holds", true}});
    else
      ctx.emit("counterexample: " + r.counterexample->letters(),
               json{{"holds", false}, {"counterexample", r.counterexample->letters()}});
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computations in Thompson's group F, its marked limits, "
               "and the first Grigorchuk group"};
  app.require_subcommand(1);

  Ctx ctx;
  ctx.out = &out;
  app.add_flag("--json", ctx.as_json, "structured output");
  app.add_flag("--parallel", ctx.parallel, "use the parallel kernels");
  app.add_option("--symbols", ctx.symbol_files, "symbol table JSON file (repeatable)");

  add_f_commands(app, ctx);
  add_word_commands(app, ctx);
  add_solve_commands(app, ctx);
  add_limits_commands(app, ctx);
  add_hnn_commands(app, ctx);
  add_grig_commands(app, ctx);

  try {
    std::vector<std::string> argv = args;
    argv.insert(argv.begin(), "flimit");
    std::vector<const char*> raw;
    for (const std::string& s : argv) raw.push_back(s.c_str());
    app.parse(static_cast<int>(raw.size()), raw.data());
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help() << "\n";
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "BadInput: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace flimit
