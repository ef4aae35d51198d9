#pragma once
// One self-describing text format for every artifact the library handles:
// categories, posets, lattices, morphism classes, model structures,
// functors, transformations, Reedy structures, bifibration setups, Reedy
// cases and bigluing instances. Line-oriented, whitespace-separated,
// '#' comments, versioned by the header line "qspec 1". Loading resolves
// every name eagerly and runs the structural validators; property checks
// (axioms, constructions) belong to the commands.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quillen/reedy.hpp"

namespace quillen {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + " col " + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
};

struct SetupDecl {
  std::string name, p, base, cof, weq, fib;
};
struct ReedyCaseDecl {
  std::string name, reedy, lattice, model;
};
struct GlueDecl {
  std::string name, alpha, base_model, lattice, fiber_model;
};

struct Workspace {
  std::vector<std::pair<std::string, CatPtr>> categories;
  std::vector<std::pair<std::string, FinLattice>> lattices;
  std::vector<std::pair<std::string, MorClass>> classes;
  std::vector<std::pair<std::string, ModelStructure>> models;
  std::vector<std::pair<std::string, Functor>> functors;
  std::vector<std::pair<std::string, NatTransformation>> nats;
  std::vector<std::pair<std::string, ReedyCat>> reedys;
  std::vector<SetupDecl> setups;
  std::vector<ReedyCaseDecl> reedy_cases;
  std::vector<GlueDecl> glues;

  template <typename T>
  static const T* find(const std::vector<std::pair<std::string, T>>& v, const std::string& n) {
    for (auto& [k, x] : v)
      if (k == n) return &x;
    return nullptr;
  }
  const CatPtr* category(const std::string& n) const { return find(categories, n); }
  const FinLattice* lattice(const std::string& n) const { return find(lattices, n); }
  const MorClass* cls(const std::string& n) const { return find(classes, n); }
  const ModelStructure* model(const std::string& n) const { return find(models, n); }
  const Functor* functor(const std::string& n) const { return find(functors, n); }
  const NatTransformation* nat(const std::string& n) const { return find(nats, n); }
  const ReedyCat* reedy(const std::string& n) const { return find(reedys, n); }

  template <typename T>
  static const T& need(const std::vector<std::pair<std::string, T>>& v, const std::string& n,
                       const char* kind) {
    const T* p = find(v, n);
    if (!p) throw CheckFailure(std::string("workspace: no ") + kind + " named " + n);
    return *p;
  }
};

namespace detail {

struct SpecTok {
  std::string text;
  int col = 0;
};
struct SpecLine {
  int number = 0;
  std::vector<SpecTok> toks;
};

inline std::vector<SpecLine> spec_tokenize(const std::string& text) {
  std::vector<SpecLine> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    ++number;
    SpecLine line{number, {}};
    for (size_t i = pos; i < eol;) {
      char c = text[i];
      if (c == '#') break;
      if (std::isspace((unsigned char)c)) {
        ++i;
        continue;
      }
      size_t start = i;
      while (i < eol && !std::isspace((unsigned char)text[i]) && text[i] != '#') ++i;
      line.toks.push_back({text.substr(start, i - start), (int)(start - pos) + 1});
    }
    if (!line.toks.empty()) out.push_back(std::move(line));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return out;
}

inline int spec_find_obj(const FinCat& c, const std::string& name) {
  for (Obj x = 0; x < c.num_objects(); ++x)
    if (c.obj_name[x] == name) return x;
  return -1;
}

inline int spec_find_mor(const FinCat& c, const std::string& name) {
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    if (c.mor_name[f] == name) return f;
  return -1;
}

inline int spec_int(const SpecLine& ln, const SpecTok& t) {
  try {
    size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used == t.text.size()) return v;
  } catch (...) {
  }
  throw ParseError(ln.number, t.col, "expected an integer, got '" + t.text + "'");
}

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : lines_(spec_tokenize(text)) {}

  Workspace parse() {
    Workspace ws;
    if (lines_.empty()) return ws;
    const SpecLine& head = lines_[0];
    if (head.toks.size() != 2 || head.toks[0].text != "qspec" || head.toks[1].text != "1")
      throw ParseError(head.number, head.toks[0].col, "expected the header line 'qspec 1'");
    for (i_ = 1; i_ < lines_.size(); ++i_) {
      const SpecLine& ln = lines_[i_];
      const std::string& kw = ln.toks[0].text;
      if (kw == "category")
        parse_category(ws, ln);
      else if (kw == "poset")
        parse_poset(ws, ln);
      else if (kw == "lattice")
        parse_lattice(ws, ln);
      else if (kw == "class")
        parse_class(ws, ln);
      else if (kw == "model")
        parse_model(ws, ln);
      else if (kw == "functor")
        parse_functor(ws, ln);
      else if (kw == "nat")
        parse_nat(ws, ln);
      else if (kw == "reedy")
        parse_reedy(ws, ln);
      else if (kw == "setup")
        parse_setup(ws, ln);
      else if (kw == "reedycase")
        parse_reedycase(ws, ln);
      else if (kw == "glue")
        parse_glue(ws, ln);
      else
        throw ParseError(ln.number, ln.toks[0].col, "unknown declaration '" + kw + "'");
    }
    return ws;
  }

 private:
  std::vector<SpecLine> lines_;
  size_t i_ = 0;

  [[noreturn]] void fail(const SpecLine& ln, const SpecTok& t, const std::string& msg) {
    throw ParseError(ln.number, t.col, msg);
  }

  void want(const SpecLine& ln, size_t n) {
    if (ln.toks.size() != n)
      fail(ln, ln.toks[0], "'" + ln.toks[0].text + "' takes " + std::to_string(n - 1) +
                               " arguments, got " + std::to_string(ln.toks.size() - 1));
  }

  template <typename T>
  void claim(const SpecLine& ln, const std::vector<std::pair<std::string, T>>& v,
             const std::string& name) {
    if (Workspace::find(v, name)) fail(ln, ln.toks[1], "duplicate name '" + name + "'");
  }

  const SpecLine& block_line() {
    if (++i_ >= lines_.size())
      throw ParseError(lines_.back().number, 1, "unterminated block, expected 'end'");
    return lines_[i_];
  }

  const CatPtr& get_cat(const Workspace& ws, const SpecLine& ln, const SpecTok& t) {
    const CatPtr* c = ws.category(t.text);
    if (!c) fail(ln, t, "no category named '" + t.text + "'");
    return *c;
  }

  Obj get_obj(const FinCat& c, const SpecLine& ln, const SpecTok& t) {
    int x = spec_find_obj(c, t.text);
    if (x < 0) fail(ln, t, "no object named '" + t.text + "'");
    return x;
  }

  Mor get_mor(const FinCat& c, const SpecLine& ln, const SpecTok& t) {
    int f = spec_find_mor(c, t.text);
    if (f < 0) fail(ln, t, "no morphism named '" + t.text + "'");
    return f;
  }

  void parse_category(Workspace& ws, const SpecLine& head) {
    want(head, 2);
    claim(head, ws.categories, head.toks[1].text);
    RawCat raw;
    std::vector<int> idmor;
    bool saw_objects = false;
    for (;;) {
      const SpecLine& ln = block_line();
      const std::string& kw = ln.toks[0].text;
      if (kw == "end") {
        want(ln, 1);
        break;
      }
      if (kw == "objects") {
        if (saw_objects) fail(ln, ln.toks[0], "objects already declared");
        saw_objects = true;
        for (size_t k = 1; k < ln.toks.size(); ++k) {
          for (const std::string& prev : raw.obj_name)
            if (prev == ln.toks[k].text)
              fail(ln, ln.toks[k], "duplicate object name '" + ln.toks[k].text + "'");
          raw.obj_name.push_back(ln.toks[k].text);
        }
        raw.objects = (int)raw.obj_name.size();
        idmor.assign(raw.objects, -1);
      } else if (kw == "mor") {
        want(ln, 4);
        if (!saw_objects) fail(ln, ln.toks[0], "objects must come first");
        for (const std::string& prev : raw.mor_name)
          if (prev == ln.toks[1].text)
            fail(ln, ln.toks[1], "duplicate morphism name '" + ln.toks[1].text + "'");
        int s = -1, t = -1;
        for (int x = 0; x < raw.objects; ++x) {
          if (raw.obj_name[x] == ln.toks[2].text) s = x;
          if (raw.obj_name[x] == ln.toks[3].text) t = x;
        }
        if (s < 0) fail(ln, ln.toks[2], "no object named '" + ln.toks[2].text + "'");
        if (t < 0) fail(ln, ln.toks[3], "no object named '" + ln.toks[3].text + "'");
        raw.mor_name.push_back(ln.toks[1].text);
        raw.mor.push_back({s, t});
      } else if (kw == "identity") {
        want(ln, 3);
        if (!saw_objects) fail(ln, ln.toks[0], "objects must come first");
        int x = -1;
        for (int o = 0; o < raw.objects; ++o)
          if (raw.obj_name[o] == ln.toks[1].text) x = o;
        if (x < 0) fail(ln, ln.toks[1], "no object named '" + ln.toks[1].text + "'");
        int f = -1;
        for (size_t k = 0; k < raw.mor_name.size(); ++k)
          if (raw.mor_name[k] == ln.toks[2].text) f = (int)k;
        if (f < 0) fail(ln, ln.toks[2], "no morphism named '" + ln.toks[2].text + "'");
        if (idmor[x] >= 0) fail(ln, ln.toks[1], "identity already declared");
        idmor[x] = f;
      } else if (kw == "compose") {
        want(ln, 4);
        std::array<Mor, 3> tr{};
        for (int k = 0; k < 3; ++k) {
          int f = -1;
          for (size_t j = 0; j < raw.mor_name.size(); ++j)
            if (raw.mor_name[j] == ln.toks[k + 1].text) f = (int)j;
          if (f < 0) fail(ln, ln.toks[k + 1], "no morphism named '" + ln.toks[k + 1].text + "'");
          tr[k] = f;
        }
        raw.compositions.push_back(tr);
      } else {
        fail(ln, ln.toks[0], "unknown category item '" + kw + "'");
      }
    }
    if (!saw_objects) throw ParseError(head.number, head.toks[0].col, "category has no objects line");
    for (int x = 0; x < raw.objects; ++x)
      if (idmor[x] < 0)
        throw ParseError(head.number, head.toks[0].col,
                         "object '" + raw.obj_name[x] + "' has no identity");
    raw.identity.assign(idmor.begin(), idmor.end());
    ws.categories.push_back({head.toks[1].text, validate_category(raw)});
  }

  void parse_poset(Workspace& ws, const SpecLine& head) {
    want(head, 2);
    claim(head, ws.categories, head.toks[1].text);
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (;;) {
      const SpecLine& ln = block_line();
      const std::string& kw = ln.toks[0].text;
      if (kw == "end") {
        want(ln, 1);
        break;
      }
      if (kw == "objects") {
        if (!names.empty()) fail(ln, ln.toks[0], "objects already declared");
        for (size_t k = 1; k < ln.toks.size(); ++k) {
          for (const std::string& prev : names)
            if (prev == ln.toks[k].text)
              fail(ln, ln.toks[k], "duplicate object name '" + ln.toks[k].text + "'");
          names.push_back(ln.toks[k].text);
        }
      } else if (kw == "le") {
        want(ln, 3);
        int s = -1, t = -1;
        for (size_t x = 0; x < names.size(); ++x) {
          if (names[x] == ln.toks[1].text) s = (int)x;
          if (names[x] == ln.toks[2].text) t = (int)x;
        }
        if (s < 0) fail(ln, ln.toks[1], "no object named '" + ln.toks[1].text + "'");
        if (t < 0) fail(ln, ln.toks[2], "no object named '" + ln.toks[2].text + "'");
        rel.push_back({s, t});
      } else {
        fail(ln, ln.toks[0], "unknown poset item '" + kw + "'");
      }
    }
    int n = (int)names.size();
    std::vector<uint8_t> le((size_t)n * n, 0);
    for (int x = 0; x < n; ++x) le[(size_t)x * n + x] = 1;
    for (auto& [s, t] : rel) le[(size_t)s * n + t] = 1;
    for (int k = 0; k < n; ++k)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (le[(size_t)x * n + k] && le[(size_t)k * n + y]) le[(size_t)x * n + y] = 1;
    ws.categories.push_back({head.toks[1].text, poset_category(n, le, names)});
  }

  void parse_lattice(Workspace& ws, const SpecLine& ln) {
    want(ln, 3);
    claim(ln, ws.lattices, ln.toks[1].text);
    ws.lattices.push_back({ln.toks[1].text, make_lattice(get_cat(ws, ln, ln.toks[2]))});
  }

  void parse_class(Workspace& ws, const SpecLine& ln) {
    if (ln.toks.size() < 3) want(ln, 3);
    claim(ln, ws.classes, ln.toks[1].text);
    const CatPtr& c = get_cat(ws, ln, ln.toks[2]);
    MorClass mc(c);
    if (ln.toks.size() == 4 && ln.toks[3].text == "all")
      mc = class_all(c);
    else if (ln.toks.size() == 4 && ln.toks[3].text == "ids")
      mc = class_identities(c);
    else if (ln.toks.size() == 4 && ln.toks[3].text == "isos")
      mc = class_isos(c);
    else
      for (size_t k = 3; k < ln.toks.size(); ++k) mc.set(get_mor(*c, ln, ln.toks[k]));
    ws.classes.push_back({ln.toks[1].text, std::move(mc)});
  }

  const MorClass& get_class(const Workspace& ws, const SpecLine& ln, const SpecTok& t,
                            const CatPtr& on) {
    const MorClass* mc = ws.cls(t.text);
    if (!mc) fail(ln, t, "no class named '" + t.text + "'");
    if (mc->cat.get() != on.get()) fail(ln, t, "class '" + t.text + "' lives on another category");
    return *mc;
  }

  void parse_model(Workspace& ws, const SpecLine& ln) {
    want(ln, 6);
    claim(ln, ws.models, ln.toks[1].text);
    const CatPtr& c = get_cat(ws, ln, ln.toks[2]);
    ws.models.push_back({ln.toks[1].text,
                         ModelStructure{get_class(ws, ln, ln.toks[3], c),
                                        get_class(ws, ln, ln.toks[4], c),
                                        get_class(ws, ln, ln.toks[5], c)}});
  }

  const ModelStructure& get_model(const Workspace& ws, const SpecLine& ln, const SpecTok& t,
                                  const CatPtr& on) {
    const ModelStructure* m = ws.model(t.text);
    if (!m) fail(ln, t, "no model structure named '" + t.text + "'");
    if (m->cat().get() != on.get())
      fail(ln, t, "model structure '" + t.text + "' lives on another category");
    return *m;
  }

  void parse_functor(Workspace& ws, const SpecLine& head) {
    want(head, 4);
    claim(head, ws.functors, head.toks[1].text);
    const CatPtr& dom = get_cat(ws, head, head.toks[2]);
    const CatPtr& cod = get_cat(ws, head, head.toks[3]);
    std::vector<Obj> ob(dom->num_objects(), -1);
    std::vector<Mor> mo(dom->num_morphisms(), -1);
    for (;;) {
      const SpecLine& ln = block_line();
      const std::string& kw = ln.toks[0].text;
      if (kw == "end") {
        want(ln, 1);
        break;
      }
      if (kw == "ob") {
        want(ln, 3);
        Obj x = get_obj(*dom, ln, ln.toks[1]);
        if (ob[x] >= 0) fail(ln, ln.toks[1], "image already declared");
        ob[x] = get_obj(*cod, ln, ln.toks[2]);
      } else if (kw == "mor") {
        want(ln, 3);
        Mor f = get_mor(*dom, ln, ln.toks[1]);
        if (mo[f] >= 0) fail(ln, ln.toks[1], "image already declared");
        mo[f] = get_mor(*cod, ln, ln.toks[2]);
      } else {
        fail(ln, ln.toks[0], "unknown functor item '" + kw + "'");
      }
    }
    for (Obj x = 0; x < dom->num_objects(); ++x)
      if (ob[x] < 0)
        throw ParseError(head.number, head.toks[0].col,
                         "no image for object '" + dom->obj_name[x] + "'");
    for (Mor f = 0; f < dom->num_morphisms(); ++f)
      if (mo[f] < 0)
        throw ParseError(head.number, head.toks[0].col,
                         "no image for morphism '" + dom->mor_name[f] + "'");
    ws.functors.push_back({head.toks[1].text, validate_functor(dom, cod, ob, mo)});
  }

  void parse_nat(Workspace& ws, const SpecLine& head) {
    want(head, 4);
    claim(head, ws.nats, head.toks[1].text);
    const Functor* F = ws.functor(head.toks[2].text);
    if (!F) fail(head, head.toks[2], "no functor named '" + head.toks[2].text + "'");
    const Functor* G = ws.functor(head.toks[3].text);
    if (!G) fail(head, head.toks[3], "no functor named '" + head.toks[3].text + "'");
    std::vector<Mor> at(F->dom->num_objects(), -1);
    for (;;) {
      const SpecLine& ln = block_line();
      const std::string& kw = ln.toks[0].text;
      if (kw == "end") {
        want(ln, 1);
        break;
      }
      if (kw == "at") {
        want(ln, 3);
        Obj x = get_obj(*F->dom, ln, ln.toks[1]);
        if (at[x] >= 0) fail(ln, ln.toks[1], "component already declared");
        at[x] = get_mor(*F->cod, ln, ln.toks[2]);
      } else {
        fail(ln, ln.toks[0], "unknown nat item '" + kw + "'");
      }
    }
    for (Obj x = 0; x < F->dom->num_objects(); ++x)
      if (at[x] < 0)
        throw ParseError(head.number, head.toks[0].col,
                         "no component at object '" + F->dom->obj_name[x] + "'");
    ws.nats.push_back({head.toks[1].text, validate_nat(*F, *G, at)});
  }

  void parse_reedy(Workspace& ws, const SpecLine& ln) {
    if (ln.toks.size() < 5) want(ln, 5);
    claim(ln, ws.reedys, ln.toks[1].text);
    const CatPtr& c = get_cat(ws, ln, ln.toks[2]);
    MorClass plus = get_class(ws, ln, ln.toks[3], c);
    MorClass minus = get_class(ws, ln, ln.toks[4], c);
    if ((int)ln.toks.size() - 5 != c->num_objects())
      fail(ln, ln.toks[0], "expected one degree per object");
    std::vector<int> deg;
    for (size_t k = 5; k < ln.toks.size(); ++k) deg.push_back(spec_int(ln, ln.toks[k]));
    ws.reedys.push_back({ln.toks[1].text, validate_reedy(c, deg, plus, minus)});
  }

  void parse_setup(Workspace& ws, const SpecLine& ln) {
    want(ln, 7);
    for (const SetupDecl& d : ws.setups)
      if (d.name == ln.toks[1].text) fail(ln, ln.toks[1], "duplicate name '" + d.name + "'");
    const Functor* p = ws.functor(ln.toks[2].text);
    if (!p) fail(ln, ln.toks[2], "no functor named '" + ln.toks[2].text + "'");
    get_model(ws, ln, ln.toks[3], p->cod);
    get_class(ws, ln, ln.toks[4], p->dom);
    get_class(ws, ln, ln.toks[5], p->dom);
    get_class(ws, ln, ln.toks[6], p->dom);
    ws.setups.push_back({ln.toks[1].text, ln.toks[2].text, ln.toks[3].text, ln.toks[4].text,
                         ln.toks[5].text, ln.toks[6].text});
  }

  void parse_reedycase(Workspace& ws, const SpecLine& ln) {
    want(ln, 5);
    for (const ReedyCaseDecl& d : ws.reedy_cases)
      if (d.name == ln.toks[1].text) fail(ln, ln.toks[1], "duplicate name '" + d.name + "'");
    const ReedyCat* r = ws.reedy(ln.toks[2].text);
    if (!r) fail(ln, ln.toks[2], "no reedy structure named '" + ln.toks[2].text + "'");
    const FinLattice* lat = ws.lattice(ln.toks[3].text);
    if (!lat) fail(ln, ln.toks[3], "no lattice named '" + ln.toks[3].text + "'");
    get_model(ws, ln, ln.toks[4], lat->cat);
    ws.reedy_cases.push_back({ln.toks[1].text, ln.toks[2].text, ln.toks[3].text, ln.toks[4].text});
  }

  void parse_glue(Workspace& ws, const SpecLine& ln) {
    want(ln, 6);
    for (const GlueDecl& d : ws.glues)
      if (d.name == ln.toks[1].text) fail(ln, ln.toks[1], "duplicate name '" + d.name + "'");
    const NatTransformation* a = ws.nat(ln.toks[2].text);
    if (!a) fail(ln, ln.toks[2], "no transformation named '" + ln.toks[2].text + "'");
    get_model(ws, ln, ln.toks[3], a->F.dom);
    const FinLattice* lat = ws.lattice(ln.toks[4].text);
    if (!lat) fail(ln, ln.toks[4], "no lattice named '" + ln.toks[4].text + "'");
    if (lat->cat.get() != a->F.cod.get())
      fail(ln, ln.toks[4], "lattice '" + ln.toks[4].text + "' is not over the codomain");
    get_model(ws, ln, ln.toks[5], lat->cat);
    ws.glues.push_back({ln.toks[1].text, ln.toks[2].text, ln.toks[3].text, ln.toks[4].text,
                        ln.toks[5].text});
  }
};

}  // namespace detail

inline Workspace load_spec_text(const std::string& text) {
  return detail::SpecParser(text).parse();
}

inline Workspace load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_spec_text(buf.str());
}

// ---------------------------------------------------------------------------
// Serialization. Names are sanitized to single tokens and deduplicated so
// that generated categories (products, functor categories) survive the
// round trip; loading the output reproduces every index and bit exactly.

namespace detail {

inline std::string spec_sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isgraph((unsigned char)c) && c != '#') ? c : '_';
  if (out.empty()) out = "_";
  return out;
}

inline std::vector<std::string> spec_unique_names(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  std::map<std::string, int> seen;
  for (const std::string& raw : in) {
    std::string s = spec_sanitize(raw);
    while (seen.count(s)) s += "_" + std::to_string(seen[s]++);
    seen[s] = 1;
    out.push_back(std::move(s));
  }
  return out;
}

struct SpecNames {
  std::string cat;
  std::vector<std::string> ob, mor;
};

}  // namespace detail

inline std::string save_spec(const Workspace& ws) {
  std::map<const FinCat*, detail::SpecNames> names;
  for (auto& [name, c] : ws.categories)
    names[c.get()] = {name, detail::spec_unique_names(c->obj_name),
                      detail::spec_unique_names(c->mor_name)};
  auto of = [&](const CatPtr& c) -> const detail::SpecNames& {
    auto it = names.find(c.get());
    if (it == names.end()) throw CheckFailure("save_spec: unregistered category");
    return it->second;
  };

  std::ostringstream out;
  out << "qspec 1\n";
  for (auto& [name, c] : ws.categories) {
    const detail::SpecNames& nm = names[c.get()];
    out << "\ncategory " << name << "\n  objects";
    for (const std::string& o : nm.ob) out << " " << o;
    out << "\n";
    for (Mor f = 0; f < c->num_morphisms(); ++f)
      out << "  mor " << nm.mor[f] << " " << nm.ob[c->src(f)] << " " << nm.ob[c->tgt(f)] << "\n";
    for (Obj x = 0; x < c->num_objects(); ++x)
      out << "  identity " << nm.ob[x] << " " << nm.mor[c->id(x)] << "\n";
    for (Mor g = 0; g < c->num_morphisms(); ++g)
      for (Mor f = 0; f < c->num_morphisms(); ++f)
        if (c->composable(g, f) && !c->is_id(g) && !c->is_id(f))
          out << "  compose " << nm.mor[g] << " " << nm.mor[f] << " " << nm.mor[c->compose(g, f)]
              << "\n";
    out << "end\n";
  }
  for (auto& [name, lat] : ws.lattices) out << "lattice " << name << " " << of(lat.cat).cat << "\n";
  for (auto& [name, mc] : ws.classes) {
    const detail::SpecNames& nm = of(mc.cat);
    out << "class " << name << " " << nm.cat;
    for (Mor f = 0; f < mc.cat->num_morphisms(); ++f)
      if (mc.test(f)) out << " " << nm.mor[f];
    out << "\n";
  }
  for (auto& [name, m] : ws.models) {
    std::string c, w, f;
    for (auto& [cn, mc] : ws.classes) {
      if (mc.cat.get() == m.cat().get() && mc.bits == m.cof.bits && c.empty()) c = cn;
      if (mc.cat.get() == m.cat().get() && mc.bits == m.weq.bits && w.empty()) w = cn;
      if (mc.cat.get() == m.cat().get() && mc.bits == m.fib.bits && f.empty()) f = cn;
    }
    if (c.empty() || w.empty() || f.empty())
      throw CheckFailure("save_spec: model '" + name + "' uses unregistered classes");
    out << "model " << name << " " << of(m.cat()).cat << " " << c << " " << w << " " << f << "\n";
  }
  for (auto& [name, F] : ws.functors) {
    const detail::SpecNames& dn = of(F.dom);
    const detail::SpecNames& cn = of(F.cod);
    out << "functor " << name << " " << dn.cat << " " << cn.cat << "\n";
    for (Obj x = 0; x < F.dom->num_objects(); ++x)
      out << "  ob " << dn.ob[x] << " " << cn.ob[F.ob[x]] << "\n";
    for (Mor f = 0; f < F.dom->num_morphisms(); ++f)
      out << "  mor " << dn.mor[f] << " " << cn.mor[F.mor[f]] << "\n";
    out << "end\n";
  }
  for (auto& [name, a] : ws.nats) {
    std::string fn, gn;
    for (auto& [n2, F] : ws.functors) {
      if (F.ob == a.F.ob && F.mor == a.F.mor && F.dom.get() == a.F.dom.get() &&
          F.cod.get() == a.F.cod.get() && fn.empty())
        fn = n2;
      if (F.ob == a.G.ob && F.mor == a.G.mor && F.dom.get() == a.G.dom.get() &&
          F.cod.get() == a.G.cod.get() && gn.empty())
        gn = n2;
    }
    if (fn.empty() || gn.empty())
      throw CheckFailure("save_spec: transformation '" + name + "' uses unregistered functors");
    out << "nat " << name << " " << fn << " " << gn << "\n";
    const detail::SpecNames& dn = of(a.F.dom);
    const detail::SpecNames& cn = of(a.F.cod);
    for (Obj x = 0; x < a.F.dom->num_objects(); ++x)
      out << "  at " << dn.ob[x] << " " << cn.mor[a.at[x]] << "\n";
    out << "end\n";
  }
  for (auto& [name, r] : ws.reedys) {
    std::string pn, mn;
    for (auto& [cn2, mc] : ws.classes) {
      if (mc.cat.get() == r.cat.get() && mc.bits == r.plus.bits && pn.empty()) pn = cn2;
      if (mc.cat.get() == r.cat.get() && mc.bits == r.minus.bits && mn.empty()) mn = cn2;
    }
    if (pn.empty() || mn.empty())
      throw CheckFailure("save_spec: reedy '" + name + "' uses unregistered classes");
    out << "reedy " << name << " " << of(r.cat).cat << " " << pn << " " << mn;
    for (int d : r.degree) out << " " << d;
    out << "\n";
  }
  for (const SetupDecl& d : ws.setups)
    out << "setup " << d.name << " " << d.p << " " << d.base << " " << d.cof << " " << d.weq
        << " " << d.fib << "\n";
  for (const ReedyCaseDecl& d : ws.reedy_cases)
    out << "reedycase " << d.name << " " << d.reedy << " " << d.lattice << " " << d.model << "\n";
  for (const GlueDecl& d : ws.glues)
    out << "glue " << d.name << " " << d.alpha << " " << d.base_model << " " << d.lattice << " "
        << d.fiber_model << "\n";
  return out.str();
}

}  // namespace quillen
