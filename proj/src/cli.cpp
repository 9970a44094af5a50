#include "mg/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mg/gadgets.hpp"
#include "mg/recognition.hpp"

namespace mg {

namespace {

using json = nlohmann::ordered_json;

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An InputError tagged with the argument it came from, for the diagnostic.
struct ArgumentError : std::runtime_error {
  ArgumentError(std::string arg, std::string text, const InputError& e)
      : std::runtime_error(e.what()), arg(std::move(arg)), text(std::move(text)), position(e.position()) {}
  std::string arg;
  std::string text;
  std::size_t position;
};

template <class F>
auto parsed(const std::string& arg, const std::string& text, F f) -> decltype(f(text)) {
  try {
    return f(text);
  } catch (const InputError& e) {
    throw ArgumentError(arg, text, e);
  }
}

struct Report {
  std::string command;
  json inputs = json::object();
  std::optional<std::uint64_t> budget;
  std::string outcome = "exhausted";
  std::uint64_t steps = 0;
  json certificate = nullptr;
  std::vector<std::string> lines;

  json to_json() const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["budget"] = budget ? json(*budget) : json(nullptr);
    j["outcome"] = outcome;
    j["steps_used"] = steps;
    j["certificate"] = certificate;
    return j;
  }
};

int exit_status(const std::string& outcome) {
  if (outcome == "no") return kExitNo;
  if (outcome == "exhausted") return kExitExhausted;
  return kExitYes;
}

long long parse_integer(std::string_view text, std::size_t offset = 0) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("expected an integer, got '" + std::string(text) + "'", offset);
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

// Comma separated words; commas inside [u,v] belong to the word.
std::vector<Word> parse_word_list(std::string_view text, int arity) {
  std::vector<Word> out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos == text.size()) return out;
  for (;;) {
    out.push_back(parse_word_at(text, pos, arity));
    skip();
    if (pos == text.size()) return out;
    if (text[pos] != ',') throw InputError("expected ',' between words", pos);
    ++pos;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NoInput("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Machine machine_from_spec(const std::string& spec) {
  for (const FleetMachine& fm : fleet())
    if (fm.name == spec) return fm.machine;
  return parsed("--machine", read_file(spec), [](const std::string& t) { return parse_machine(t); });
}

// Group specs naming a word-problem description:
//   cyclic:N  abelian:K[:r,r;r,r]  lamplighter  finite-lamplighter:N  sigma:N
//   perm:(..);(..)  table:FILE:i,j  lockhart:MACHINE  mckinsey:<..>  kuznetsov:<..>
struct GroupSpec {
  WpDescription wp;
  std::string kind;
};

GroupSpec group_from_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string_view rest =
      colon == std::string::npos ? std::string_view() : std::string_view(spec).substr(colon + 1);
  const std::size_t off = colon + 1;
  auto need_rest = [&] {
    if (colon == std::string::npos) throw InputError("group '" + kind + "' needs a parameter after ':'", spec.size());
  };

  if (kind == "lamplighter") return {lamplighter_wp(), kind};
  if (kind == "cyclic") {
    need_rest();
    return {cyclic_wp(parse_integer(rest, off)), kind};
  }
  if (kind == "finite-lamplighter") {
    need_rest();
    return {perm_wp(finite_lamplighter(static_cast<int>(parse_integer(rest, off)))), kind};
  }
  if (kind == "sigma") {
    need_rest();
    auto [s0, s1] = sigma_witness(static_cast<int>(parse_integer(rest, off)));
    return {perm_wp({s0, s1}), kind};
  }
  if (kind == "abelian") {
    need_rest();
    const std::size_t second = rest.find(':');
    const int k = static_cast<int>(parse_integer(rest.substr(0, second), off));
    std::vector<std::vector<long long>> rows;
    if (second != std::string_view::npos) {
      std::size_t row_off = off + second + 1;
      for (std::string_view row : split(rest.substr(second + 1), ';')) {
        std::vector<long long> entries;
        std::size_t entry_off = row_off;
        for (std::string_view e : split(row, ',')) {
          entries.push_back(parse_integer(e, entry_off));
          entry_off += e.size() + 1;
        }
        if (static_cast<int>(entries.size()) != k) throw InputError("row length differs from the rank", row_off);
        rows.push_back(std::move(entries));
        row_off += row.size() + 1;
      }
    }
    return {abelian_wp(k, std::move(rows)), kind};
  }
  if (kind == "perm") {
    need_rest();
    std::vector<Permutation> gens;
    for (std::string_view p : split(rest, ';')) gens.push_back(parse_permutation(p));
    return {perm_wp(std::move(gens)), kind};
  }
  if (kind == "table") {
    need_rest();
    const std::size_t last = rest.rfind(':');
    if (last == std::string_view::npos) throw InputError("table needs FILE:tuple", spec.size());
    const CayleyTable t = parse_table(read_file(std::string(rest.substr(0, last))));
    std::vector<int> tuple;
    std::size_t entry_off = off + last + 1;
    for (std::string_view e : split(rest.substr(last + 1), ',')) {
      tuple.push_back(static_cast<int>(parse_integer(e, entry_off)));
      entry_off += e.size() + 1;
    }
    return {finite_wp(make_marking(t, std::move(tuple))), kind};
  }
  if (kind == "lockhart") {
    need_rest();
    return {lockhart_wp_gadget(machine_from_spec(std::string(rest))), kind};
  }
  if (kind == "mckinsey") {
    need_rest();
    return {mckinsey_wp(parse_presentation(rest)), kind};
  }
  if (kind == "kuznetsov") {
    need_rest();
    const FinitePresentation p = parse_presentation(rest);
    return {kuznetsov_wp(relator_list(p.arity, p.relators)), kind};
  }
  throw InputError("unknown group kind '" + kind + "'", 0);
}

// A candidate given either as a presentation or as a group spec.
ReDescription candidate_re(const std::string& text) {
  if (!text.empty() && text.front() == '<')
    return parsed("--candidate", text, [](const std::string& t) { return consequences(parse_presentation(t)); });
  return as_re(parsed("--candidate", text, [](const std::string& t) { return group_from_spec(t).wp; }));
}

json words_json(const std::vector<Word>& ws) {
  json out = json::array();
  for (const Word& w : ws) out.push_back(format_word(w));
  return out;
}

std::string braces(const std::vector<Word>& ws) {
  std::string out = "{";
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + format_word(ws[i]);
  return out + "}";
}

json table_json(const CayleyTable& t) {
  json rows = json::array();
  for (int x = 0; x < t.order(); ++x) {
    json row = json::array();
    for (int y = 0; y < t.order(); ++y) row.push_back(t.mul(x, y));
    rows.push_back(row);
  }
  return rows;
}

void record(Report& r, const RunResult<Verdict>& res) {
  r.outcome = res.terminal ? "accepted" : "exhausted";
  r.steps = res.steps;
}

void record(Report& r, const RunResult<Answer>& res) {
  r.outcome = !res.terminal ? "exhausted" : res.last == Answer::yes ? "yes" : "no";
  r.steps = res.steps;
}

void record_emissions(Report& r, Enumerator<Word> e, std::size_t count, std::uint64_t budget) {
  Collected<Word> got = collect_first(e, count, Budget{budget});
  r.outcome = got.items.size() == count ? "emitted" : "exhausted";
  r.steps = got.steps;
  r.certificate = {{"emitted", words_json(got.items)}};
  r.lines.push_back(braces(got.items));
}

struct Options {
  std::uint64_t budget = 0;
  std::string format = "text";
  std::string seed_order = "fixed";

  std::string group, word, presentation, second, candidate, map, algo = "fp", target, relators, machine, g, extra,
      kind;
  std::vector<std::string> words, laws;
  bool marked = false, abstract = false, lamplighter = false, certificate = false;
  int arity = 0, k = 1, max_order = 0, n = 0;
  std::size_t emit = 0;
};

std::uint64_t need_budget(const Options& o, const CLI::App& app, const std::string& command) {
  if (app.get_option("--budget")->count() == 0)
    throw UsageFailure("--budget is required for " + command);
  return o.budget;
}

FinitePresentation presentation_arg(const std::string& name, const std::string& text) {
  return parsed(name, text, [](const std::string& t) { return parse_presentation(t); });
}

Word word_arg(const std::string& name, const std::string& text, int arity) {
  return parsed(name, text, [arity](const std::string& t) { return parse_word(t, arity); });
}

std::vector<Word> list_arg(const std::string& name, const std::string& text, int arity) {
  return parsed(name, text, [arity](const std::string& t) { return parse_word_list(t, arity); });
}

Report cmd_wp(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "wp";
  const std::uint64_t budget = app.get_option("--budget")->count() ? o.budget : 1'000'000;
  r.budget = budget;
  const GroupSpec spec = parsed("--group", o.group, [](const std::string& t) { return group_from_spec(t); });
  r.inputs = {{"group", o.group}, {"words", o.words}};
  bool any_no = false, any_exhausted = false;
  json answers = json::array();
  for (const std::string& text : o.words) {
    const Word w = word_arg("word", text, spec.wp.arity());
    Decider d = spec.wp.decide(w);
    RunResult<Answer> res = run(d, Budget{budget});
    const std::string answer = !res.terminal ? "exhausted" : res.last == Answer::yes ? "yes" : "no";
    any_no |= answer == "no";
    any_exhausted |= answer == "exhausted";
    r.steps += res.steps;
    answers.push_back({{"word", format_word(w)}, {"answer", answer}, {"steps", res.steps}});
    r.lines.push_back(format_word(w) + ": " + answer);
  }
  r.outcome = any_exhausted ? "exhausted" : any_no ? "no" : "yes";
  r.certificate = {{"answers", answers}};
  return r;
}

Report cmd_consequences(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "consequences";
  r.budget = need_budget(o, app, r.command);
  const FinitePresentation p = presentation_arg("presentation", o.presentation);
  r.inputs = {{"presentation", format_presentation(p)}};
  if (o.emit > 0) {
    r.inputs["emit"] = o.emit;
    record_emissions(r, consequences(p).enumerate(), o.emit, *r.budget);
    return r;
  }
  if (o.word.empty()) throw UsageFailure("consequences needs --word or --emit");
  const Word w = word_arg("--word", o.word, p.arity);
  r.inputs["word"] = format_word(w);
  SemiDecider s = consequences(p).accepts(w);
  record(r, run(s, Budget{*r.budget}));
  return r;
}

Report cmd_quotient(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "quotient";
  r.budget = need_budget(o, app, r.command);
  r.inputs = {{"algo", o.algo}, {"candidate", o.candidate}};
  if (o.algo == "fp") {
    const FinitePresentation p = presentation_arg("--of", o.presentation);
    r.inputs["of"] = format_presentation(p);
    const ReDescription h = candidate_re(o.candidate);
    const Substitution f = o.map.empty() ? Substitution::identity(p.arity)
                                         : Substitution(list_arg("--map", o.map, h.arity()), h.arity());
    if (!o.map.empty()) r.inputs["map"] = words_json(f.images);
    SemiDecider s = fp_quotient(p).accepts(h, f);
    record(r, run(s, Budget{*r.budget}));
    return r;
  }
  if (o.algo != "fp-wpi" && o.algo != "lamplighter") throw UsageFailure("unknown --algo '" + o.algo + "'");
  std::optional<WpiQuotientDescription> q;
  if (o.algo == "fp-wpi") {
    const FinitePresentation p = presentation_arg("--of", o.presentation);
    r.inputs["of"] = format_presentation(p);
    q = fp_wpi_quotient(p);
  } else {
    q = lamplighter_finite_quotient();
  }
  const WpDescription h = parsed("--candidate", o.candidate, [](const std::string& t) { return group_from_spec(t).wp; });
  const Substitution f = o.map.empty() ? Substitution::identity(q->arity())
                                       : Substitution(list_arg("--map", o.map, h.arity()), h.arity());
  if (!o.map.empty()) r.inputs["map"] = words_json(f.images);
  Decider d = q->decide(h, f);
  record(r, run(d, Budget{*r.budget}));
  return r;
}

Report cmd_extract(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "extract";
  r.budget = need_budget(o, app, r.command);
  std::optional<FinitePresentation> target;
  if (!o.target.empty()) target = presentation_arg("--target", o.target);
  std::optional<RelatorEnumerator> source;
  if (o.lamplighter) {
    source = lamplighter_relators();
    r.inputs["source"] = "lamplighter";
  } else {
    const int arity = o.arity > 0 ? o.arity : target ? target->arity : 1;
    const std::vector<Word> list = list_arg("--relators", o.relators, arity);
    source = relator_list(arity, list);
    r.inputs["relators"] = words_json(list);
  }
  if (target) r.inputs["target"] = format_presentation(*target);
  const QuotientDescription q = target ? fp_quotient(*target) : stream_quotient(*source);
  std::vector<Law> laws;
  for (const std::string& text : o.laws)
    laws.push_back(parsed("--law", text, [](const std::string& t) { return parse_law(t); }));
  if (!laws.empty()) {
    json lj = json::array();
    for (const Law& l : laws) lj.push_back(format_law(l));
    r.inputs["laws"] = lj;
  }
  Finder<FinitePresentation> f = laws.empty() ? extract_presentation(*source, q) : extract_in_variety(*source, q, laws);
  RunResult<Found<FinitePresentation>> res = run(f, Budget{*r.budget});
  r.steps = res.steps;
  if (res.terminal) {
    r.outcome = "found";
    r.certificate = {{"relators", words_json(res.last.value->relators)}};
    r.lines.push_back(braces(res.last.value->relators));
  }
  return r;
}

Report cmd_iso(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "iso";
  r.budget = need_budget(o, app, r.command);
  if (o.marked == o.abstract) throw UsageFailure("iso needs exactly one of --marked and --abstract");
  const FinitePresentation p1 = presentation_arg("first presentation", o.presentation);
  const FinitePresentation p2 = presentation_arg("second presentation", o.second);
  r.inputs = {{"mode", o.marked ? "marked" : "abstract"},
              {"first", format_presentation(p1)},
              {"second", format_presentation(p2)}};
  if (o.marked) {
    SemiDecider s = marked_iso_semidecider(p1, p2);
    record(r, run(s, Budget{*r.budget}));
    return r;
  }
  Finder<IsoWitness> f = abstract_iso_find(p1, p2);
  RunResult<Found<IsoWitness>> res = run(f, Budget{*r.budget});
  r.steps = res.steps;
  if (res.terminal) {
    r.outcome = "accepted";
    const IsoWitness& w = *res.last.value;
    r.certificate = {{"phi", words_json(w.phi.images)}, {"psi", words_json(w.psi.images)}};
    r.lines.push_back("phi: " + braces(w.phi.images));
    r.lines.push_back("psi: " + braces(w.psi.images));
  }
  return r;
}

Report cmd_mckinsey(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "mckinsey";
  r.budget = need_budget(o, app, r.command);
  const FinitePresentation p = presentation_arg("presentation", o.presentation);
  const Word w = word_arg("word", o.word, p.arity);
  r.inputs = {{"presentation", format_presentation(p)}, {"word", format_word(w)}};
  Decider d = mckinsey_wp(p).decide(w);
  record(r, run(d, Budget{*r.budget}));
  if (r.outcome == "no" && o.certificate) {
    Finder<Marking> f = mckinsey_certificate(p, w);
    RunResult<Found<Marking>> found = run(f, Budget{*r.budget});
    if (found.terminal) {
      const Marking& m = *found.last.value;
      r.certificate = {{"order", m.table->order()},
                       {"tuple", m.tuple},
                       {"table", table_json(*m.table)},
                       {"steps", found.steps}};
      r.lines.push_back("finite quotient of order " + std::to_string(m.table->order()));
    }
  }
  return r;
}

Report cmd_kuznetsov(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "kuznetsov";
  r.budget = need_budget(o, app, r.command);
  const FinitePresentation p = presentation_arg("presentation", o.presentation);
  const Word w = word_arg("word", o.word, p.arity);
  r.inputs = {{"presentation", format_presentation(p)}, {"word", format_word(w)}};
  Decider d = kuznetsov_wp(relator_list(p.arity, p.relators)).decide(w);
  record(r, run(d, Budget{*r.budget}));
  return r;
}

Report cmd_pickel(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "pickel";
  r.budget = need_budget(o, app, r.command);
  const FinitePresentation g = presentation_arg("first presentation", o.presentation);
  const FinitePresentation h = presentation_arg("second presentation", o.second);
  r.inputs = {{"first", format_presentation(g)},
              {"second", format_presentation(h)},
              {"k", o.k},
              {"max_order", o.max_order}};
  const WpiQuotientDescription gq = fp_wpi_quotient(g), hq = fp_wpi_quotient(h);
  Finder<CayleyTable> f = pickel_find(gq, hq, o.k, o.max_order);
  RunResult<Found<CayleyTable>> res = run(f, Budget{*r.budget});
  r.steps = res.steps;
  if (res.terminal) {
    r.outcome = "found";
    auto t = std::make_shared<const CayleyTable>(*res.last.value);
    Decider of_g = admits_quotient(gq, t, o.k);
    Answer a = Answer::running;
    while (a == Answer::running) a = of_g.step();
    const bool first = a == Answer::yes;
    r.certificate = {{"order", t->order()}, {"quotient_of", first ? "first" : "second"}, {"table", table_json(*t)}};
    r.lines.push_back("separating table of order " + std::to_string(t->order()) + ", a quotient of the " +
                      (first ? "first" : "second") + " group only");
  }
  return r;
}

Report cmd_gadget(const Options& o, const CLI::App& app) {
  Report r;
  r.command = "gadget";
  r.budget = need_budget(o, app, r.command);
  const Machine m = machine_from_spec(o.machine);
  r.inputs = {{"kind", o.kind}, {"machine", o.machine}};
  const std::string probe = o.word.empty() ? "a" : o.word;

  std::optional<RelatorEnumerator> stream;
  if (o.kind == "trivial-or-z2") {
    stream = trivial_or_z2(m);
  } else if (o.kind == "quotient-pair") {
    const FinitePresentation g = presentation_arg("--g", o.g);
    stream = quotient_pair(m, g, list_arg("--extra", o.extra, g.arity));
    r.inputs["g"] = format_presentation(g);
    r.inputs["extra"] = o.extra;
  } else if (o.kind == "freeze") {
    const int arity = o.arity > 0 ? o.arity : 1;
    stream = freeze_gadget(m, relator_list(arity, list_arg("--relators", o.relators, arity)));
    r.inputs["relators"] = o.relators;
  }
  if (stream) {
    if (o.emit > 0) {
      r.inputs["emit"] = o.emit;
      record_emissions(r, stream->stream, o.emit, *r.budget);
      return r;
    }
    const Word w = word_arg("--word", probe, stream->arity);
    r.inputs["word"] = format_word(w);
    SemiDecider s = re_from_enumerator(*stream).accepts(w);
    record(r, run(s, Budget{*r.budget}));
    return r;
  }
  if (o.kind == "co-re") {
    const Word w = word_arg("--word", probe, 1);
    r.inputs["word"] = format_word(w);
    SemiDecider s = co_re_gadget(m).accepts(w);
    record(r, run(s, Budget{*r.budget}));
    return r;
  }
  if (o.kind == "quotient-algo") {
    if (o.candidate.empty()) throw UsageFailure("quotient-algo needs --candidate");
    r.inputs["candidate"] = o.candidate;
    SemiDecider s = quotient_algo_gadget(m).accepts(candidate_re(o.candidate));
    record(r, run(s, Budget{*r.budget}));
    return r;
  }
  if (o.kind == "lockhart") {
    const Word w = word_arg("--word", probe, 1);
    r.inputs["word"] = format_word(w);
    Decider d = lockhart_wp_gadget(m).decide(w);
    record(r, run(d, Budget{*r.budget}));
    return r;
  }
  throw UsageFailure("unknown gadget '" + o.kind + "'");
}

Report cmd_witness(const Options& o) {
  Report r;
  r.command = "witness";
  r.inputs = {{"N", o.n}};
  auto [s0, s1] = parsed("--N", std::to_string(o.n), [](const std::string& t) {
    return sigma_witness(static_cast<int>(parse_integer(t)));
  });
  const std::vector<Permutation> gens{s0, s1};
  const Word a = generator(1, 2), b = generator(2, 2);
  const bool square = evaluate(gens, b * b).is_identity();
  bool as_expected = square;
  json commutators = json::array();
  r.lines.push_back("sigma0 " + format_permutation(s0));
  r.lines.push_back("sigma1 " + format_permutation(s1));
  r.lines.push_back(std::string("sigma1^2 = 1: ") + (square ? "holds" : "fails"));
  for (int n = 1; n <= o.n + 1; ++n) {
    const bool trivial = evaluate(gens, commutator(b, a.power(-n) * b * a.power(n))).is_identity();
    as_expected &= trivial == (n <= o.n);
    commutators.push_back({{"n", n}, {"identity", trivial}});
    r.lines.push_back("[sigma1, sigma0^-" + std::to_string(n) + " sigma1 sigma0^" + std::to_string(n) +
                      "] = 1: " + (trivial ? "holds" : "fails"));
  }
  r.outcome = as_expected ? "yes" : "no";
  r.certificate = {{"sigma0", s0.images()},
                   {"sigma1", s1.images()},
                   {"square_identity", square},
                   {"commutators", commutators}};
  return r;
}

void print(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.to_json().dump(2) << "\n";
    return;
  }
  for (const std::string& line : r.lines) out << line << "\n";
  out << "outcome: " << r.outcome << "\n";
  out << "steps: " << r.steps << "\n";
}

void diagnose(const ArgumentError& e, std::ostream& err) {
  err << "mgroups: malformed " << e.arg << ": " << e.what() << "\n";
  if (e.position == InputError::npos || e.text.find('\n') != std::string::npos) return;
  err << "  " << e.text << "\n";
  err << "  " << std::string(std::min(e.position, e.text.size()), ' ') << "^\n";
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Marked groups given by algorithms: run any operation under a step budget.", "mgroups");
  app.require_subcommand(1);
  app.add_option("--budget", o.budget, "Step budget for the computation");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed-order", o.seed_order, "Enumeration order (always fixed)")
      ->check(CLI::IsMember({"fixed"}));

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  CLI::App* wp = sub("wp", "Evaluate words with a word-problem description");
  wp->add_option("--group", o.group, "Group spec, e.g. cyclic:6 or perm:(1 0 2);(0 2 1)")->required();
  wp->add_option("words", o.words, "Words to evaluate")->required();

  CLI::App* cons = sub("consequences", "Query or list the normal closure of a presentation's relators");
  cons->add_option("presentation", o.presentation)->required();
  cons->add_option("--word", o.word, "Word to semi-decide");
  cons->add_option("--emit", o.emit, "Number of closure elements to list");

  CLI::App* quot = sub("quotient", "Run a marked quotient algorithm on a candidate");
  quot->add_option("--algo", o.algo, "fp, fp-wpi or lamplighter")
      ->check(CLI::IsMember({"fp", "fp-wpi", "lamplighter"}));
  quot->add_option("--of", o.presentation, "Presentation of the source group");
  quot->add_option("--candidate", o.candidate, "Candidate presentation or group spec")->required();
  quot->add_option("--map", o.map, "Images of the source generators, comma separated");

  CLI::App* ext = sub("extract", "Extract a finite presentation from a relator stream and a quotient algorithm");
  ext->add_option("--relators", o.relators, "Relator stream as a finite list");
  ext->add_flag("--lamplighter", o.lamplighter, "Use the lamplighter relator stream");
  ext->add_option("--arity", o.arity, "Rank of the relator list");
  ext->add_option("--target", o.target, "Presentation whose quotient algorithm is used");
  ext->add_option("--law", o.laws, "Law of the variety to extract in");

  CLI::App* iso = sub("iso", "Semi-decide isomorphism of two presentations");
  iso->add_flag("--marked", o.marked);
  iso->add_flag("--abstract", o.abstract);
  iso->add_option("first", o.presentation)->required();
  iso->add_option("second", o.second)->required();

  CLI::App* mck = sub("mckinsey", "Word problem of a residually finite presentation");
  mck->add_option("presentation", o.presentation)->required();
  mck->add_option("word", o.word)->required();
  mck->add_flag("--certificate", o.certificate, "Find a finite quotient witnessing a non-identity word");

  CLI::App* kuz = sub("kuznetsov", "Word problem of a simple presentation");
  kuz->add_option("presentation", o.presentation)->required();
  kuz->add_option("word", o.word)->required();

  CLI::App* pick = sub("pickel", "Find a finite quotient separating two presentations");
  pick->add_option("first", o.presentation)->required();
  pick->add_option("second", o.second)->required();
  pick->add_option("--k", o.k, "Marking arity");
  pick->add_option("--max-order", o.max_order, "Largest table order, 0 for unbounded");

  CLI::App* gad = sub("gadget", "Build a machine-parametrised description and probe it");
  gad->add_option("kind", o.kind, "trivial-or-z2, quotient-pair, co-re, quotient-algo, lockhart or freeze")
      ->required();
  gad->add_option("--machine", o.machine, "Fleet machine name or machine file")->required();
  gad->add_option("--word", o.word, "Probe word (default a)");
  gad->add_option("--emit", o.emit, "List this many relators instead of probing");
  gad->add_option("--g", o.g, "Presentation of G for quotient-pair");
  gad->add_option("--extra", o.extra, "Extra relators of H for quotient-pair");
  gad->add_option("--relators", o.relators, "Relator list fed to freeze");
  gad->add_option("--arity", o.arity, "Rank of the freeze relator list");
  gad->add_option("--candidate", o.candidate, "Candidate for quotient-algo");

  CLI::App* wit = sub("witness", "Print the permutation pair and check its relations");
  wit->add_option("--N", o.n)->required();

  try {
    // CLI11 reads "[x,y]" as an inline list; a leading space keeps a
    // commutator word whole and the word grammar skips it.
    std::vector<std::string> reversed;
    for (auto it = args.rbegin(); it != args.rend(); ++it)
      reversed.push_back(!it->empty() && it->front() == '[' ? " " + *it : *it);
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "mgroups: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Report r;
    if (wp->parsed()) r = cmd_wp(o, app);
    else if (cons->parsed()) r = cmd_consequences(o, app);
    else if (quot->parsed()) r = cmd_quotient(o, app);
    else if (ext->parsed()) r = cmd_extract(o, app);
    else if (iso->parsed()) r = cmd_iso(o, app);
    else if (mck->parsed()) r = cmd_mckinsey(o, app);
    else if (kuz->parsed()) r = cmd_kuznetsov(o, app);
    else if (pick->parsed()) r = cmd_pickel(o, app);
    else if (gad->parsed()) r = cmd_gadget(o, app);
    else r = cmd_witness(o);
    print(r, o.format, out);
    return exit_status(r.outcome);
  } catch (const UsageFailure& e) {
    err << "mgroups: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    diagnose(e, err);
    return kExitInput;
  } catch (const InputError& e) {
    err << "mgroups: malformed input: " << e.what() << "\n";
    return kExitInput;
  } catch (const NoInput& e) {
    err << "mgroups: " << e.what() << "\n";
    return kExitNoInput;
  }
}

}  // namespace mg
