#include "asurf/parser.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "lexer_impl.hpp"

namespace asurf {

namespace {

using detail::Tok;
using detail::Token;

class Parser : detail::TokenStream {
public:
  Parser(std::string_view src, std::string file)
      : TokenStream(src, file), file_(std::move(file)) {}

  SystemModel run() {
    expect_keyword("system");
    Token name = expect(Tok::Ident, "system name");
    model_.name = name.text;
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) item();
    expect(Tok::RBrace);
    expect(Tok::End);

    finalize(model_);
    auto diags = validate(model_);
    for (const auto& d : diags) {
      if (d.severity != Severity::Error) continue;
      SourceSpan where{file_, 1, 1};
      if (auto it = decl_spans_.find(d.location); it != decl_spans_.end())
        where = it->second;
      throw ParseError(where, d.message);
    }
    return model_;
  }

private:
  void declare(const std::string& name, const SourceSpan& span) {
    decl_spans_.emplace(name, span);
  }

  void item() {
    if (at_keyword("process")) return component(ComponentKind::Process);
    if (at_keyword("device")) return component(ComponentKind::Device);
    if (at_keyword("bus")) return component(ComponentKind::Bus);
    if (at_keyword("system")) return component(ComponentKind::System);
    if (at_keyword("subprogram")) return component(ComponentKind::Subprogram);
    if (at_keyword("connection")) return connection();
    if (at_keyword("flow")) return flow();
    if (at_keyword("data")) return data_decl();
    if (at_keyword("privilege")) return privilege();
    throw ParseError(peek().span,
                     "unexpected " + detail::describe(peek()) +
                         ", expected a declaration (process, device, bus, "
                         "system, subprogram, connection, flow, data, privilege)",
                     "declaration");
  }

  void component(ComponentKind kind) {
    take();  // keyword
    Token name = expect(Tok::Ident, "component name");
    Component c;
    c.name = name.text;
    c.kind = kind;
    declare(c.name, name.span);
    if (at(Tok::Semi)) {
      take();
    } else {
      expect(Tok::LBrace);
      while (at_keyword("properties")) properties(&c, nullptr, nullptr);
      expect(Tok::RBrace);
    }
    model_.components.push_back(std::move(c));
  }

  void connection() {
    take();
    Token name = expect(Tok::Ident, "connection name");
    Connection c;
    c.name = name.text;
    declare(c.name, name.span);
    expect(Tok::Colon);
    c.from = expect(Tok::Ident, "component name").text;
    expect(Tok::Arrow);
    c.to = expect(Tok::Ident, "component name").text;
    if (at(Tok::Semi)) {
      take();
    } else {
      expect(Tok::LBrace);
      for (;;) {
        if (at_keyword("carries")) {
          take();
          c.carried_data = ident_list();
          c.carried_declared = true;
          expect(Tok::Semi);
        } else if (at_keyword("properties")) {
          properties(nullptr, &c, nullptr);
        } else {
          break;
        }
      }
      expect(Tok::RBrace);
    }
    model_.connections.push_back(std::move(c));
  }

  void flow() {
    take();
    Token name = expect(Tok::Ident, "flow name");
    Flow f;
    f.name = name.text;
    declare(f.name, name.span);
    expect(Tok::Colon);
    f.hops.push_back(expect(Tok::Ident, "component name").text);
    expect(Tok::Arrow);
    f.hops.push_back(expect(Tok::Ident, "component name").text);
    while (at(Tok::Arrow)) {
      take();
      f.hops.push_back(expect(Tok::Ident, "component name").text);
    }
    if (at_keyword("carries")) {
      take();
      f.data = ident_list();
    }
    expect(Tok::Semi);
    model_.flows.push_back(std::move(f));
  }

  void data_decl() {
    take();
    Token name = expect(Tok::Ident, "data name");
    DataItem d;
    d.name = name.text;
    declare(d.name, name.span);
    if (at(Tok::Semi)) {
      take();
    } else {
      expect(Tok::LBrace);
      while (at_keyword("properties")) properties(nullptr, nullptr, &d);
      expect(Tok::RBrace);
    }
    model_.data_items.push_back(std::move(d));
  }

  void privilege() {
    take();
    Token name = expect(Tok::Ident, "privilege name");
    Privilege p;
    p.name = name.text;
    declare(p.name, name.span);
    std::string holder;
    SourceSpan holder_span;
    if (at_keyword("of")) {
      take();
      Token h = expect(Tok::Ident, "process name");
      holder = h.text;
      holder_span = h.span;
    }
    expect(Tok::LBrace);
    if (!at(Tok::RBrace)) p.data = ident_list();
    expect(Tok::RBrace);
    if (!holder.empty()) {
      bool found = false;
      for (auto& c : model_.components)
        if (c.name == holder) {
          c.privilege_ref = p.name;
          found = true;
        }
      if (!found)
        throw ParseError(holder_span, "privilege '" + p.name +
                                          "' attached to undeclared component '" +
                                          holder + "'");
    }
    model_.privileges.push_back(std::move(p));
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> out;
    out.push_back(expect(Tok::Ident, "identifier").text);
    while (at(Tok::Comma)) {
      take();
      out.push_back(expect(Tok::Ident, "identifier").text);
    }
    return out;
  }

  void properties(Component* comp, Connection* conn, DataItem* data) {
    expect_keyword("properties");
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) property(comp, conn, data);
    expect(Tok::RBrace);
  }

  void property(Component* comp, Connection* conn, DataItem* data) {
    Token ns = expect(Tok::Ident, "property name");
    expect(Tok::ColonColon);
    Token leaf = expect(Tok::Ident, "property name");
    std::string prop = ns.text + "::" + leaf.text;
    expect(Tok::FatArrow);
    Token value = take();
    expect(Tok::Semi);

    auto bad_target = [&](const char* target) -> ParseError {
      return ParseError(ns.span, "property '" + prop + "' only applies to " +
                                     std::string(target));
    };

    if (prop == "Security::Encryption" || prop == "Security::KeyExchange" ||
        prop == "Security::HashFunction" || prop == "Security::MediaType") {
      if (!conn) throw bad_target("connections");
      if (!conn->security) conn->security = ConnectionSecurity{};
      set_connection_enum(*conn->security, prop, value);
    } else if (prop == "Security::ASLR" || prop == "Security::DEP" ||
               prop == "Security::CodeSigning" || prop == "Security::Is64Bit" ||
               prop == "Security::CFI") {
      if (!comp || comp->kind != ComponentKind::Process)
        throw bad_target("processes");
      if (!comp->security) comp->security = ProcessSecurity{};
      bool flag = parse_bool(value);
      if (prop == "Security::ASLR") comp->security->aslr = flag;
      else if (prop == "Security::DEP") comp->security->dep = flag;
      else if (prop == "Security::CodeSigning") comp->security->code_signing = flag;
      else if (prop == "Security::Is64Bit") comp->security->is_64_bit = flag;
      else comp->security->cfi = flag;
    } else if (prop == "Security::MethodCount") {
      if (!comp || (comp->kind != ComponentKind::Process &&
                    comp->kind != ComponentKind::Subprogram))
        throw bad_target("processes and subprograms");
      if (value.kind != Tok::Number || value.text.find('.') != std::string::npos)
        throw ParseError(value.span, "method count must be a nonnegative integer");
      comp->method_count = std::stoi(value.text);
    } else if (prop == "Security::Trust") {
      if (!comp) throw bad_target("components");
      if (value.kind == Tok::Ident && value.text == "trusted")
        comp->trust = Trust::Trusted;
      else if (value.kind == Tok::Ident && value.text == "untrusted")
        comp->trust = Trust::Untrusted;
      else
        throw ParseError(value.span, "expected 'trusted' or 'untrusted', got " +
                                         detail::describe(value));
    } else if (prop == "Impact::LossKW") {
      if (!data) throw bad_target("data items");
      double kw = 0.0;
      if (value.kind != Tok::Number || !detail::parse_number(value.text, kw))
        throw ParseError(value.span, "expected a nonnegative number");
      data->impact_kw = kw;
      data->source = DataItem::Source::Declared;
    } else {
      throw ParseError(ns.span, "unknown property '" + prop + "'");
    }
  }

  bool parse_bool(const Token& value) {
    if (value.kind == Tok::Ident && value.text == "true") return true;
    if (value.kind == Tok::Ident && value.text == "false") return false;
    throw ParseError(value.span, "expected 'true' or 'false', got " +
                                     detail::describe(value));
  }

  void set_connection_enum(ConnectionSecurity& sec, const std::string& prop,
                           const Token& value) {
    auto bad = [&](const char* vocab) -> ParseError {
      return ParseError(value.span, "value " + detail::describe(value) +
                                        " is outside the vocabulary for " + prop +
                                        " (" + vocab + ")");
    };
    const std::string& v = value.text;
    if (prop == "Security::Encryption") {
      if (value.kind != Tok::Ident) throw bad("AES, TripleDES, DES, Null");
      if (v == "AES") sec.encryption = Encryption::AES;
      else if (v == "TripleDES") sec.encryption = Encryption::TripleDES;
      else if (v == "DES") sec.encryption = Encryption::DES;
      else if (v == "Null") sec.encryption = Encryption::Null;
      else throw bad("AES, TripleDES, DES, Null");
    } else if (prop == "Security::KeyExchange") {
      if (value.kind != Tok::Ident) throw bad("Bits2048, Bits1024, Bits512, Null");
      if (v == "Bits2048") sec.key_exchange = KeyExchange::Bits2048;
      else if (v == "Bits1024") sec.key_exchange = KeyExchange::Bits1024;
      else if (v == "Bits512") sec.key_exchange = KeyExchange::Bits512;
      else if (v == "Null") sec.key_exchange = KeyExchange::Null;
      else throw bad("Bits2048, Bits1024, Bits512, Null");
    } else if (prop == "Security::HashFunction") {
      if (value.kind != Tok::Ident) throw bad("SHA2, SHA1, MD5, Null");
      if (v == "SHA2") sec.hash_function = HashFunction::SHA2;
      else if (v == "SHA1") sec.hash_function = HashFunction::SHA1;
      else if (v == "MD5") sec.hash_function = HashFunction::MD5;
      else if (v == "Null") sec.hash_function = HashFunction::Null;
      else throw bad("SHA2, SHA1, MD5, Null");
    } else {
      if (value.kind != Tok::Ident) throw bad("Wired, Wireless");
      if (v == "Wired") sec.media_type = MediaType::Wired;
      else if (v == "Wireless") sec.media_type = MediaType::Wireless;
      else throw bad("Wired, Wireless");
    }
  }

  std::string file_;
  SystemModel model_;
  std::map<std::string, SourceSpan> decl_spans_;
};

std::string format_kw(double v) {
  std::ostringstream os;
  os << v;
  std::string s = os.str();
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
    s += ".0";
  return s;
}

}  // namespace

SystemModel parse_model(std::string_view source, const std::string& filename) {
  return Parser(source, filename).run();
}

std::string pretty_print(const SystemModel& m) {
  std::ostringstream os;
  os << "system " << m.name << " {\n";

  for (const auto& d : m.data_items) {
    if (d.impact_kw == 0.0 && d.source == DataItem::Source::Declared) {
      os << "  data " << d.name << ";\n";
    } else {
      os << "  data " << d.name << " {\n"
         << "    properties {\n"
         << "      Impact::LossKW => " << format_kw(d.impact_kw) << ";\n"
         << "    }\n"
         << "  }\n";
    }
  }

  for (const auto& c : m.components) {
    os << "  " << to_string(c.kind) << " " << c.name;
    bool has_props = c.trust == Trust::Untrusted || c.security || c.method_count;
    if (!has_props) {
      os << ";\n";
      continue;
    }
    os << " {\n    properties {\n";
    os << "      Security::Trust => " << to_string(c.trust) << ";\n";
    if (c.method_count)
      os << "      Security::MethodCount => " << *c.method_count << ";\n";
    if (c.security) {
      const auto& s = *c.security;
      os << "      Security::ASLR => " << (s.aslr ? "true" : "false") << ";\n"
         << "      Security::DEP => " << (s.dep ? "true" : "false") << ";\n"
         << "      Security::CodeSigning => " << (s.code_signing ? "true" : "false")
         << ";\n"
         << "      Security::Is64Bit => " << (s.is_64_bit ? "true" : "false")
         << ";\n"
         << "      Security::CFI => " << (s.cfi ? "true" : "false") << ";\n";
    }
    os << "    }\n  }\n";
  }

  for (const auto& c : m.connections) {
    os << "  connection " << c.name << " : " << c.from << " -> " << c.to;
    bool block = (c.carried_declared && !c.carried_data.empty()) || c.security;
    if (!block) {
      os << ";\n";
      continue;
    }
    os << " {\n";
    if (c.carried_declared && !c.carried_data.empty()) {
      os << "    carries ";
      for (size_t i = 0; i < c.carried_data.size(); ++i)
        os << (i ? ", " : "") << c.carried_data[i];
      os << ";\n";
    }
    if (c.security) {
      const auto& s = *c.security;
      os << "    properties {\n"
         << "      Security::Encryption => " << to_string(s.encryption) << ";\n"
         << "      Security::KeyExchange => " << to_string(s.key_exchange) << ";\n"
         << "      Security::HashFunction => " << to_string(s.hash_function)
         << ";\n"
         << "      Security::MediaType => " << to_string(s.media_type) << ";\n"
         << "    }\n";
    }
    os << "  }\n";
  }

  for (const auto& f : m.flows) {
    os << "  flow " << f.name << " : ";
    for (size_t i = 0; i < f.hops.size(); ++i)
      os << (i ? " -> " : "") << f.hops[i];
    if (!f.data.empty()) {
      os << " carries ";
      for (size_t i = 0; i < f.data.size(); ++i) os << (i ? ", " : "") << f.data[i];
    }
    os << ";\n";
  }

  for (const auto& p : m.privileges) {
    std::string holder;
    for (const auto& c : m.components)
      if (c.privilege_ref == p.name) holder = c.name;
    os << "  privilege " << p.name;
    if (!holder.empty()) os << " of " << holder;
    os << " { ";
    for (size_t i = 0; i < p.data.size(); ++i) os << (i ? ", " : "") << p.data[i];
    os << " }\n";
  }

  os << "}\n";
  return os.str();
}

ImpactTable parse_impact_table(std::string_view source,
                               const std::string& filename) {
  ImpactTable table;
  std::istringstream in{std::string(source)};
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line != "data,load_kw,loss_kw")
        throw ParseError({filename, lineno, 1},
                         "expected header 'data,load_kw,loss_kw'");
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    size_t c1 = line.find(',');
    size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      throw ParseError({filename, lineno, 1},
                       "malformed row: expected 'data,load_kw,loss_kw'");
    std::string name = line.substr(0, c1);
    std::string load_s = line.substr(c1 + 1, c2 - c1 - 1);
    std::string loss_s = line.substr(c2 + 1);
    double load = 0.0, loss = 0.0;
    if (name.empty() || !detail::parse_number(load_s, load) ||
        !detail::parse_number(loss_s, loss))
      throw ParseError({filename, lineno, 1},
                       "malformed row: expected 'data,load_kw,loss_kw'");
    if (loss < 0.0)
      throw ParseError({filename, lineno, (int)c2 + 2},
                       "negative loss for '" + name + "'");
    if (!table.loss_kw.emplace(name, loss).second)
      throw ParseError({filename, lineno, 1},
                       "duplicate identifier '" + name + "'");
    table.load_kw.emplace(name, load);
  }
  if (!saw_header)
    throw ParseError({filename, 1, 1}, "expected header 'data,load_kw,loss_kw'");
  return table;
}

void apply_impacts(SystemModel& model, const std::map<std::string, double>& loss_kw) {
  for (auto& d : model.data_items) {
    auto it = loss_kw.find(d.name);
    if (it != loss_kw.end()) {
      d.impact_kw = it->second;
      d.source = DataItem::Source::Computed;
    }
  }
}

}  // namespace asurf
