#include "ethex/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include "ethex/error.hpp"

namespace ethex {
namespace {

constexpr std::string_view kProvenanceTag = ";; provenance: ";

struct Node {
  enum class Kind { kList, kSymbol, kString };

  Kind kind = Kind::kSymbol;
  std::string text;
  std::vector<Node> children;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_list() const { return kind == Kind::kList; }
  bool is_symbol() const { return kind == Kind::kSymbol; }
  bool is_symbol(std::string_view s) const { return is_symbol() && text == s; }
};

struct Document {
  Node root;
  std::vector<std::string> provenance;
};

class Reader {
 public:
  explicit Reader(const SourceDocument& doc) : doc_(doc) {}

  Document read() {
    Document out;
    skip_space(&out.provenance);
    if (at_end()) syntax_error("'(define ...)'");
    out.root = read_node();
    skip_space(&out.provenance);
    if (!at_end()) syntax_error("end of document");
    return out;
  }

 private:
  bool at_end() const { return pos_ >= doc_.text.size(); }
  char peek() const { return doc_.text[pos_]; }

  void advance() {
    if (doc_.text[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void syntax_error(const std::string& expected) const {
    throw SyntaxError(doc_.origin, line_, column_, expected);
  }

  void skip_space(std::vector<std::string>* provenance) {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        std::size_t start = pos_;
        while (!at_end() && peek() != '\n') advance();
        std::string_view comment(doc_.text.data() + start, pos_ - start);
        if (provenance != nullptr && comment.starts_with(kProvenanceTag)) {
          provenance->emplace_back(comment.substr(kProvenanceTag.size()));
        }
      } else {
        break;
      }
    }
  }

  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
           c == ')' || c == ';' || c == '"';
  }

  Node read_node() {
    Node node;
    node.line = line_;
    node.column = column_;
    char c = peek();
    if (c == '(') {
      node.kind = Node::Kind::kList;
      advance();
      while (true) {
        skip_space(nullptr);
        if (at_end()) syntax_error("')'");
        if (peek() == ')') {
          advance();
          break;
        }
        node.children.push_back(read_node());
      }
    } else if (c == ')') {
      syntax_error("an expression");
    } else if (c == '"') {
      node.kind = Node::Kind::kString;
      advance();
      while (true) {
        if (at_end() || peek() == '\n') syntax_error("closing '\"'");
        char ch = peek();
        advance();
        if (ch == '"') break;
        if (ch == '\\') {
          if (at_end()) syntax_error("escaped character");
          ch = peek();
          advance();
        }
        node.text += ch;
      }
    } else {
      node.kind = Node::Kind::kSymbol;
      while (!at_end() && !is_delimiter(peek())) {
        node.text += peek();
        advance();
      }
    }
    return node;
  }

  const SourceDocument& doc_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

using Bindings = std::map<std::string, std::string>;

class ModelBuilder {
 public:
  ModelBuilder(const SourceDocument& domain, const SourceDocument& problem)
      : domain_(domain), problem_(problem) {}

  PlanningModel build() {
    Document dom = Reader(domain_).read();
    Document prob = Reader(problem_).read();
    model_.provenance = std::move(dom.provenance);
    origin_ = &domain_;
    read_domain(dom.root);
    origin_ = &problem_;
    read_problem(prob.root);
    try {
      model_.validate();
    } catch (const Error& e) {
      throw SemanticError(problem_.origin, 1, 1, e.what());
    }
    return std::move(model_);
  }

 private:
  [[noreturn]] void syntax_error(const Node& at,
                                 const std::string& expected) const {
    throw SyntaxError(origin_->origin, at.line, at.column, expected);
  }

  [[noreturn]] void semantic_error(const Node& at,
                                   const std::string& message) const {
    throw SemanticError(origin_->origin, at.line, at.column, message);
  }

  const Node& expect_list(const Node& node, const std::string& what) const {
    if (!node.is_list()) syntax_error(node, what);
    return node;
  }

  const std::string& expect_symbol(const Node& node,
                                   const std::string& what) const {
    if (!node.is_symbol() || node.text.empty() || node.text[0] == ':' ||
        node.text[0] == '?') {
      syntax_error(node, what);
    }
    return node.text;
  }

  std::int64_t expect_int(const Node& node) const {
    if (!node.is_symbol()) syntax_error(node, "an integer");
    std::int64_t value = 0;
    const char* first = node.text.data();
    const char* last = first + node.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) syntax_error(node, "an integer");
    return value;
  }

  // `(define (KIND NAME) sections...)`; returns NAME.
  std::string read_header(const Node& root, std::string_view kind) const {
    const std::string what = "'(define (" + std::string(kind) + " NAME) ...)'";
    if (!root.is_list() || root.children.size() < 2 ||
        !root.children[0].is_symbol("define")) {
      syntax_error(root, what);
    }
    const Node& head = root.children[1];
    if (!head.is_list() || head.children.size() != 2 ||
        !head.children[0].is_symbol(kind)) {
      syntax_error(head, what);
    }
    return expect_symbol(head.children[1], "a " + std::string(kind) + " name");
  }

  // Resolves a fact term, substituting parameters.
  std::string fact_name(const Node& node, const Bindings& bindings) const {
    auto resolve = [&](const Node& n) -> std::string {
      if (n.is_symbol() && !n.text.empty() && n.text[0] == '?') {
        auto it = bindings.find(n.text);
        if (it == bindings.end()) {
          semantic_error(n, "unbound parameter " + n.text);
        }
        return it->second;
      }
      return expect_symbol(n, "a fact name");
    };
    if (!node.is_list()) return resolve(node);
    if (node.children.empty()) syntax_error(node, "a fact name");
    std::string name = expect_symbol(node.children[0], "a predicate name");
    for (std::size_t i = 1; i < node.children.size(); ++i) {
      if (node.children[i].is_list()) {
        syntax_error(node.children[i], "a symbol argument");
      }
      name += "_" + resolve(node.children[i]);
    }
    return name;
  }

  std::set<Fact> fact_list(const Node& node, const Bindings& bindings,
                           bool must_be_declared) const {
    expect_list(node, "a fact list '(f ...)'");
    std::set<Fact> out;
    for (const auto& child : node.children) {
      std::string name = fact_name(child, bindings);
      if (must_be_declared && !model_.facts.contains(name)) {
        semantic_error(child, "undeclared fact " + name);
      }
      out.insert(std::move(name));
    }
    return out;
  }

  void read_domain(const Node& root) {
    model_.domain_name = read_header(root, "domain");
    bool have_facts = false;
    for (std::size_t i = 2; i < root.children.size(); ++i) {
      const Node& section = expect_list(root.children[i], "a domain section");
      if (section.children.empty() || !section.children[0].is_symbol()) {
        syntax_error(section, "a section keyword");
      }
      const std::string& keyword = section.children[0].text;
      if (keyword == ":facts") {
        if (have_facts) semantic_error(section, "duplicate :facts section");
        have_facts = true;
        for (std::size_t j = 1; j < section.children.size(); ++j) {
          std::string name = fact_name(section.children[j], {});
          if (!model_.facts.insert(name).second) {
            semantic_error(section.children[j], "duplicate fact " + name);
          }
        }
      } else if (keyword == ":types") {
        read_types(section);
      } else if (keyword == ":action") {
        if (!have_facts) {
          semantic_error(section, ":facts must precede actions");
        }
        read_action(section);
      } else {
        syntax_error(section.children[0], "one of :facts, :types, :action");
      }
    }
  }

  void read_types(const Node& section) {
    for (std::size_t j = 1; j < section.children.size(); ++j) {
      const Node& entry =
          expect_list(section.children[j], "a type entry '(TYPE obj ...)'");
      if (entry.children.empty()) syntax_error(entry, "a type name");
      const std::string& type = expect_symbol(entry.children[0], "a type name");
      auto& objects = types_[type];
      for (std::size_t k = 1; k < entry.children.size(); ++k) {
        objects.push_back(expect_symbol(entry.children[k], "an object name"));
      }
    }
  }

  // `?a ?b - T ?c - U`; untyped trailing parameters range over all objects.
  std::vector<std::pair<std::string, std::vector<std::string>>> read_parameters(
      const Node& list) const {
    expect_list(list, "a parameter list");
    std::vector<std::pair<std::string, std::vector<std::string>>> params;
    std::vector<std::string> pending;
    std::vector<std::string> all_objects;
    for (const auto& [type, objects] : types_) {
      all_objects.insert(all_objects.end(), objects.begin(), objects.end());
    }
    const auto& items = list.children;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const Node& item = items[i];
      if (item.is_symbol("-")) {
        if (pending.empty() || i + 1 >= items.size()) {
          syntax_error(item, "'?param - TYPE'");
        }
        const Node& type_node = items[++i];
        const std::string& type = expect_symbol(type_node, "a type name");
        auto it = types_.find(type);
        if (it == types_.end()) semantic_error(type_node, "unknown type " + type);
        for (auto& p : pending) params.emplace_back(std::move(p), it->second);
        pending.clear();
      } else if (item.is_symbol() && item.text.size() > 1 &&
                 item.text[0] == '?') {
        pending.push_back(item.text);
      } else {
        syntax_error(item, "a parameter '?name'");
      }
    }
    for (auto& p : pending) params.emplace_back(std::move(p), all_objects);
    return params;
  }

  void read_action(const Node& section) {
    if (section.children.size() < 2) syntax_error(section, "an action name");
    const std::string& name =
        expect_symbol(section.children[1], "an action name");
    const Node* params = nullptr;
    const Node* pre = nullptr;
    const Node* add = nullptr;
    const Node* del = nullptr;
    std::int64_t cost = 1;
    IntrinsicValue intrinsic = IntrinsicValue::kNeutral;
    std::set<std::string> seen;

    const auto& items = section.children;
    for (std::size_t i = 2; i < items.size(); i += 2) {
      const Node& key = items[i];
      if (!key.is_symbol() || key.text.empty() || key.text[0] != ':') {
        syntax_error(key, "an action keyword");
      }
      if (i + 1 >= items.size()) syntax_error(key, "a value after " + key.text);
      if (!seen.insert(key.text).second) {
        semantic_error(key, "duplicate keyword " + key.text);
      }
      const Node& value = items[i + 1];
      if (key.text == ":parameters") {
        params = &value;
      } else if (key.text == ":pre") {
        pre = &value;
      } else if (key.text == ":add") {
        add = &value;
      } else if (key.text == ":del") {
        del = &value;
      } else if (key.text == ":cost") {
        cost = expect_int(value);
        if (cost < 0) semantic_error(value, "negative cost");
      } else if (key.text == ":intrinsic") {
        auto parsed = value.is_symbol() ? intrinsic_from_string(value.text)
                                        : std::nullopt;
        if (!parsed) syntax_error(value, "good, neutral or bad");
        intrinsic = *parsed;
      } else {
        syntax_error(key,
                     "one of :parameters, :pre, :add, :del, :cost, :intrinsic");
      }
    }

    auto parameters =
        params ? read_parameters(*params)
               : std::vector<std::pair<std::string, std::vector<std::string>>>{};
    Bindings bindings;
    std::function<void(std::size_t, std::string)> ground =
        [&](std::size_t index, std::string grounded_name) {
          if (index < parameters.size()) {
            for (const auto& object : parameters[index].second) {
              bindings[parameters[index].first] = object;
              ground(index + 1, grounded_name + "_" + object);
            }
            return;
          }
          Action action;
          action.name = std::move(grounded_name);
          action.cost = cost;
          action.intrinsic = intrinsic;
          if (pre) action.preconditions = fact_list(*pre, bindings, true);
          if (add) action.add_effects = fact_list(*add, bindings, true);
          if (del) action.del_effects = fact_list(*del, bindings, true);
          action.normalize();
          if (model_.find_action(action.name) != nullptr) {
            semantic_error(section, "duplicate action " + action.name);
          }
          model_.actions.push_back(std::move(action));
        };
    ground(0, name);
  }

  void read_problem(const Node& root) {
    model_.problem_name = read_header(root, "problem");
    std::set<std::string> seen;
    for (std::size_t i = 2; i < root.children.size(); ++i) {
      const Node& section = expect_list(root.children[i], "a problem section");
      if (section.children.empty() || !section.children[0].is_symbol()) {
        syntax_error(section, "a section keyword");
      }
      const std::string& keyword = section.children[0].text;
      if (!seen.insert(keyword).second &&
          (keyword == ":domain" || keyword == ":init" || keyword == ":goal" ||
           keyword == ":utility" || keyword == ":display")) {
        semantic_error(section, "duplicate " + keyword + " section");
      }
      if (keyword == ":domain") {
        if (section.children.size() != 2) syntax_error(section, "'(:domain NAME)'");
        const std::string& name =
            expect_symbol(section.children[1], "a domain name");
        if (name != model_.domain_name) {
          semantic_error(section.children[1],
                         "problem is for domain " + name + ", not " +
                             model_.domain_name);
        }
      } else if (keyword == ":init" || keyword == ":goal") {
        if (section.children.size() != 2) {
          syntax_error(section, "'(" + keyword + " (f ...))'");
        }
        auto facts = fact_list(section.children[1], {}, true);
        (keyword == ":init" ? model_.init : model_.goal) = std::move(facts);
      } else if (keyword == ":utility") {
        for (std::size_t j = 1; j < section.children.size(); ++j) {
          const Node& entry =
              expect_list(section.children[j], "a utility entry '(f INT)'");
          if (entry.children.size() != 2) syntax_error(entry, "'(f INT)'");
          std::string fact = fact_name(entry.children[0], {});
          if (!model_.facts.contains(fact)) {
            semantic_error(entry.children[0], "undeclared fact " + fact);
          }
          if (model_.utility.entries().contains(fact)) {
            semantic_error(entry, "duplicate utility for " + fact);
          }
          model_.utility.set(fact, expect_int(entry.children[1]));
        }
      } else if (keyword == ":display") {
        for (std::size_t j = 1; j < section.children.size(); ++j) {
          const Node& entry = expect_list(section.children[j],
                                          "a display entry '(name \"phrase\")'");
          if (entry.children.size() != 2 ||
              entry.children[1].kind != Node::Kind::kString) {
            syntax_error(entry, "'(name \"phrase\")'");
          }
          std::string name = fact_name(entry.children[0], {});
          if (model_.find_action(name) == nullptr &&
              !model_.facts.contains(name)) {
            semantic_error(entry.children[0], "display for unknown name " + name);
          }
          model_.display[name] = entry.children[1].text;
        }
      } else {
        syntax_error(section.children[0],
                     "one of :domain, :init, :goal, :utility, :display");
      }
    }
    if (!seen.contains(":domain")) syntax_error(root, "a (:domain NAME) section");
  }

  const SourceDocument& domain_;
  const SourceDocument& problem_;
  const SourceDocument* origin_ = nullptr;
  std::map<std::string, std::vector<std::string>> types_;
  PlanningModel model_;
};

std::string fact_group(const std::set<Fact>& facts) {
  std::string out = "(";
  bool first = true;
  for (const auto& f : facts) {
    if (!first) out += ' ';
    out += f;
    first = false;
  }
  return out + ")";
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

PlanningModel parse_model(const SourceDocument& domain,
                          const SourceDocument& problem) {
  return ModelBuilder(domain, problem).build();
}

SourcePair serialize_model(const PlanningModel& model) {
  std::ostringstream dom;
  for (const auto& id : model.provenance) dom << kProvenanceTag << id << '\n';
  dom << "(define (domain " << model.domain_name << ")\n";
  dom << "  (:facts";
  for (const auto& f : model.facts) dom << ' ' << f;
  dom << ")";
  for (const auto& a : model.actions) {
    dom << "\n  (:action " << a.name << " :pre " << fact_group(a.preconditions)
        << " :add " << fact_group(a.add_effects) << " :del "
        << fact_group(a.del_effects) << " :cost " << a.cost << " :intrinsic "
        << to_string(a.intrinsic) << ")";
  }
  dom << ")\n";

  std::ostringstream prob;
  prob << "(define (problem " << model.problem_name << ")\n";
  prob << "  (:domain " << model.domain_name << ")\n";
  prob << "  (:init " << fact_group(model.init) << ")\n";
  prob << "  (:goal " << fact_group(model.goal) << ")\n";
  prob << "  (:utility";
  for (const auto& [fact, value] : model.utility.entries()) {
    prob << " (" << fact << ' ' << value << ")";
  }
  prob << ")";
  if (!model.display.empty()) {
    prob << "\n  (:display";
    for (const auto& [name, phrase] : model.display) {
      prob << "\n    (" << name << ' ' << quoted(phrase) << ")";
    }
    prob << ")";
  }
  prob << ")\n";

  return {{dom.str(), model.domain_name + ".dom"},
          {prob.str(), model.problem_name + ".prob"}};
}

SourceDocument read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {buffer.str(), path};
}

}  // namespace ethex
