/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include <permcheck/scenario.hpp>

#include <permcheck/model_cs1.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace permcheck::scenario
{

namespace
{

constexpr std::int64_t kMaxCs1Apps = 64;

} // namespace

const std::vector<ModelInfo>& registered_models()
{
    static const std::vector<ModelInfo> models = {
        {cs1::model_name, "apps <count>", {cs1::type_ok_name, cs1::consistent_name}},
        {custom::model_name, "app <id> { declare <name> level normal|dangerous; request <name> }",
            {custom::escalation_free_name}},
    };
    return models;
}

const ModelInfo* find_model(std::string_view name)
{
    const auto& models = registered_models();
    auto it = std::find_if(models.begin(), models.end(), [&](const ModelInfo& m) { return m.name == name; });
    return it == models.end() ? nullptr : &*it;
}

std::string Diagnostic::render() const
{
    std::ostringstream out;
    out << line << ':' << column << ": " << (kind == DiagnosticKind::Syntax ? "syntax" : "semantic") << ' '
        << (severity == Severity::Error ? "error" : "warning") << ": " << message;
    return out.str();
}

namespace
{

enum class TokenKind
{
    Ident,
    Integer,
    LBrace,
    RBrace,
    End,
};

struct Token
{
    TokenKind kind;
    std::string text;
    SourcePos pos;
};

struct SyntaxFailure
{
    Diagnostic diagnostic;
};

Diagnostic syntax_error(SourcePos pos, std::string message)
{
    return {pos.line, pos.column, DiagnosticKind::Syntax, Severity::Error, std::move(message)};
}

Diagnostic semantic(SourcePos pos, std::string message, Severity severity = Severity::Error)
{
    return {pos.line, pos.column, DiagnosticKind::Semantic, severity, std::move(message)};
}

bool ident_start(unsigned char c)
{
    return std::isalpha(c) || c == '_';
}

bool ident_char(unsigned char c)
{
    return std::isalnum(c) || c == '_' || c == '.';
}

class Lexer
{
public:
    explicit Lexer(std::string_view source) : src_(source) {}

    std::vector<Token> run()
    {
        std::vector<Token> tokens;
        while (true)
        {
            skip_blank();
            const SourcePos pos{line_, column_};
            if (at_end())
            {
                tokens.push_back({TokenKind::End, "", pos});
                return tokens;
            }
            const auto c = static_cast<unsigned char>(peek());
            if (c == '{' || c == '}')
            {
                advance();
                tokens.push_back({c == '{' ? TokenKind::LBrace : TokenKind::RBrace, std::string(1, static_cast<char>(c)), pos});
            }
            else if (std::isdigit(c))
            {
                tokens.push_back({TokenKind::Integer, take_while([](unsigned char d) { return std::isdigit(d) != 0; }), pos});
            }
            else if (ident_start(c))
            {
                tokens.push_back({TokenKind::Ident, take_while(ident_char), pos});
            }
            else
            {
                std::string shown = std::isprint(c) ? std::string("'") + static_cast<char>(c) + "'"
                                                    : "byte 0x" + hex(c);
                throw SyntaxFailure{syntax_error(pos, "unexpected character " + shown)};
            }
        }
    }

private:
    static std::string hex(unsigned char c)
    {
        static constexpr char digits[] = "0123456789abcdef";
        return {digits[c >> 4], digits[c & 0xf]};
    }

    bool at_end() const { return offset_ >= src_.size(); }
    char peek() const { return src_[offset_]; }

    void advance()
    {
        if (src_[offset_] == '\n')
        {
            ++line_;
            column_ = 1;
        }
        else
        {
            ++column_;
        }
        ++offset_;
    }

    void skip_blank()
    {
        while (!at_end())
        {
            const char c = peek();
            if (c == '#')
            {
                while (!at_end() && peek() != '\n')
                    advance();
            }
            else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v')
            {
                advance();
            }
            else
            {
                return;
            }
        }
    }

    template <typename Pred>
    std::string take_while(Pred pred)
    {
        const auto start = offset_;
        while (!at_end() && pred(static_cast<unsigned char>(peek())))
            advance();
        return std::string(src_.substr(start, offset_ - start));
    }

    std::string_view src_;
    std::size_t offset_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser
{
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ScenarioDef parse()
    {
        while (current().kind != TokenKind::End)
            statement();
        return std::move(def_);
    }

    /// Semantic problems the def cannot represent (repeated statements,
    /// duplicate declarations inside one app).
    std::vector<Diagnostic> take_findings() { return std::move(findings_); }

private:
    const Token& current() const { return tokens_[index_]; }

    Token expect(TokenKind kind, std::string_view what)
    {
        if (current().kind != kind)
        {
            std::string found = current().kind == TokenKind::End ? "end of input" : "'" + current().text + "'";
            throw SyntaxFailure{syntax_error(current().pos, "expected " + std::string(what) + ", found " + found)};
        }
        return tokens_[index_++];
    }

    std::uint64_t integer(std::string_view what)
    {
        const auto tok = expect(TokenKind::Integer, what);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc{} || value > static_cast<std::uint64_t>(INT64_MAX))
            throw SyntaxFailure{syntax_error(tok.pos, "integer '" + tok.text + "' is too large")};
        last_integer_pos_ = tok.pos;
        return value;
    }

    void statement()
    {
        const auto keyword = expect(TokenKind::Ident, "a statement keyword");
        if (keyword.text == "model")
        {
            const auto name = expect(TokenKind::Ident, "a model name");
            if (seen_model_)
            {
                findings_.push_back(semantic(keyword.pos, "model is already set"));
                return;
            }
            seen_model_ = true;
            def_.model_name = name.text;
            def_.locations.model = keyword.pos;
            def_.locations.model_name = name.pos;
        }
        else if (keyword.text == "apps")
        {
            const auto value = integer("an app count");
            if (def_.params.contains("apps"))
            {
                findings_.push_back(semantic(keyword.pos, "apps is already set"));
                return;
            }
            def_.params["apps"] = static_cast<std::int64_t>(value);
            def_.locations.apps = last_integer_pos_;
        }
        else if (keyword.text == "max_states")
        {
            const auto value = integer("a state limit");
            if (def_.locations.max_states)
            {
                findings_.push_back(semantic(keyword.pos, "max_states is already set"));
                return;
            }
            def_.max_states = value;
            def_.locations.max_states = last_integer_pos_;
        }
        else if (keyword.text == "check")
        {
            const auto name = expect(TokenKind::Ident, "an invariant name");
            def_.check_list.push_back(name.text);
            def_.locations.checks.push_back(name.pos);
        }
        else if (keyword.text == "app")
        {
            app_block();
        }
        else
        {
            throw SyntaxFailure{syntax_error(keyword.pos, "unknown statement '" + keyword.text + "'")};
        }
    }

    void app_block()
    {
        const auto id = expect(TokenKind::Ident, "an app id");
        expect(TokenKind::LBrace, "'{'");
        custom::AppSpec app{id.text, {}, {}};
        SourceMap::App where{id.pos, {}, {}};
        while (current().kind != TokenKind::RBrace)
        {
            const auto item = expect(TokenKind::Ident, "'declare', 'request' or '}'");
            if (item.text == "declare")
            {
                const auto name = expect(TokenKind::Ident, "a permission name");
                const auto kw = expect(TokenKind::Ident, "'level'");
                if (kw.text != "level")
                    throw SyntaxFailure{syntax_error(kw.pos, "expected 'level', found '" + kw.text + "'")};
                const auto level_tok = expect(TokenKind::Ident, "a protection level");
                auto level = custom::parse_level(level_tok.text);
                if (!level)
                {
                    findings_.push_back(semantic(level_tok.pos,
                        "unknown protection level '" + level_tok.text + "' (expected normal or dangerous)"));
                    continue;
                }
                if (!app.declares.emplace(name.text, *level).second)
                {
                    findings_.push_back(
                        semantic(name.pos, "app '" + app.id + "' already declares '" + name.text + "'"));
                    continue;
                }
                where.declares.emplace(name.text, name.pos);
            }
            else if (item.text == "request")
            {
                const auto name = expect(TokenKind::Ident, "a permission name");
                if (!app.requests.insert(name.text).second)
                {
                    findings_.push_back(
                        semantic(name.pos, "app '" + app.id + "' already requests '" + name.text + "'"));
                    continue;
                }
                where.requests.emplace(name.text, name.pos);
            }
            else
            {
                throw SyntaxFailure{syntax_error(item.pos, "expected 'declare', 'request' or '}', found '" + item.text + "'")};
            }
        }
        expect(TokenKind::RBrace, "'}'");
        def_.app_specs.push_back(std::move(app));
        def_.locations.app_blocks.push_back(std::move(where));
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
    ScenarioDef def_;
    std::vector<Diagnostic> findings_;
    bool seen_model_ = false;
    SourcePos last_integer_pos_;
};

bool earlier(const Diagnostic& a, const Diagnostic& b)
{
    return std::tie(a.line, a.column) < std::tie(b.line, b.column);
}

SourcePos app_pos(const ScenarioDef& def, std::size_t index)
{
    return index < def.locations.app_blocks.size() ? def.locations.app_blocks[index].id : SourcePos{};
}

} // namespace

std::vector<Diagnostic> validate_semantics(const ScenarioDef& def)
{
    std::vector<Diagnostic> out;
    const auto& loc = def.locations;

    const auto* model = find_model(def.model_name);
    if (def.model_name.empty())
        out.push_back(semantic({1, 1}, "scenario has no model statement"));
    else if (!model)
        out.push_back(semantic(loc.model_name, "unknown model '" + def.model_name + "'"));

    for (const auto& [name, value] : def.params)
        if (name != "apps")
            out.push_back(semantic(loc.model, "unknown parameter '" + name + "'"));

    const bool cs1 = def.model_name == cs1::model_name;
    const bool custom = def.model_name == custom::model_name;
    const auto apps_pos = loc.apps.value_or(loc.model);
    if (cs1)
    {
        auto apps = def.params.find("apps");
        if (apps == def.params.end())
            out.push_back(semantic(loc.model, "model aps_cs1 needs an 'apps' count"));
        else if (apps->second < 1)
            out.push_back(semantic(apps_pos, "apps must be at least 1"));
        else if (apps->second > kMaxCs1Apps)
            out.push_back(semantic(apps_pos, "apps must be at most " + std::to_string(kMaxCs1Apps)));
        if (!def.app_specs.empty())
            out.push_back(semantic(app_pos(def, 0), "app blocks apply only to model custom_permissions"));
    }
    if (custom)
    {
        if (def.params.contains("apps"))
            out.push_back(semantic(apps_pos, "'apps' applies only to model aps_cs1"));
        if (def.app_specs.empty())
            out.push_back(semantic(loc.model, "model custom_permissions needs at least one app block"));
        if (def.app_specs.size() > 254)
            out.push_back(semantic(app_pos(def, 254), "too many apps (at most 254)"));

        std::set<std::string> ids;
        std::set<std::string> declared;
        for (const auto& app : def.app_specs)
            for (const auto& [name, level] : app.declares)
                declared.insert(name);
        for (std::size_t i = 0; i < def.app_specs.size(); ++i)
        {
            const auto& app = def.app_specs[i];
            if (!ids.insert(app.id).second)
                out.push_back(semantic(app_pos(def, i), "duplicate app id '" + app.id + "'"));
            for (const auto& name : app.requests)
            {
                if (declared.contains(name))
                    continue;
                SourcePos pos = app_pos(def, i);
                if (i < loc.app_blocks.size())
                    if (auto it = loc.app_blocks[i].requests.find(name); it != loc.app_blocks[i].requests.end())
                        pos = it->second;
                out.push_back(semantic(pos, "app '" + app.id + "' requests '" + name + "' which no app declares",
                    Severity::Warning));
            }
        }
    }

    std::set<std::string> checked;
    for (std::size_t i = 0; i < def.check_list.size(); ++i)
    {
        const auto& name = def.check_list[i];
        const SourcePos pos = i < loc.checks.size() ? loc.checks[i] : SourcePos{};
        if (model && std::find(model->invariants.begin(), model->invariants.end(), name) == model->invariants.end())
            out.push_back(semantic(pos, "model " + def.model_name + " has no invariant '" + name + "'"));
        else if (!checked.insert(name).second)
            out.push_back(semantic(pos, "invariant '" + name + "' is already checked"));
    }

    if (def.max_states < 1)
        out.push_back(semantic(loc.max_states.value_or(SourcePos{}), "max_states must be at least 1"));

    std::stable_sort(out.begin(), out.end(), earlier);
    return out;
}

ParseResult parse_scenario(std::string_view source)
{
    try
    {
        Parser parser(Lexer(source).run());
        ScenarioDef def = parser.parse();
        auto findings = parser.take_findings();
        if (def.check_list.empty())
            if (const auto* model = find_model(def.model_name))
                def.check_list = model->invariants;
        auto semantic_findings = validate_semantics(def);
        findings.insert(findings.end(), semantic_findings.begin(), semantic_findings.end());
        std::stable_sort(findings.begin(), findings.end(), earlier);
        for (auto& f : findings)
            if (f.severity == Severity::Error)
                return f;
        return def;
    }
    catch (const SyntaxFailure& failure)
    {
        return failure.diagnostic;
    }
}

std::string render_scenario(const ScenarioDef& def)
{
    std::ostringstream out;
    out << "model " << def.model_name << '\n';
    for (const auto& [name, value] : def.params)
        out << name << ' ' << value << '\n';
    for (const auto& app : def.app_specs)
    {
        out << "app " << app.id << " {\n";
        for (const auto& [name, level] : app.declares)
            out << "  declare " << name << " level " << custom::to_string(level) << '\n';
        for (const auto& name : app.requests)
            out << "  request " << name << '\n';
        out << "}\n";
    }
    for (const auto& name : def.check_list)
        out << "check " << name << '\n';
    if (def.max_states != default_max_states)
        out << "max_states " << def.max_states << '\n';
    return out.str();
}

std::unique_ptr<TransitionSystem> instantiate(const ScenarioDef& def)
{
    if (def.model_name == cs1::model_name)
    {
        auto apps = def.params.find("apps");
        if (apps == def.params.end() || apps->second < 1)
            throw cs1::ConfigurationError("aps_cs1 needs a positive 'apps' count");
        return std::make_unique<cs1::Cs1System>(static_cast<std::size_t>(apps->second));
    }
    if (def.model_name == custom::model_name)
        return std::make_unique<custom::CustomSystem>(def.app_specs);
    throw std::invalid_argument("unknown model '" + def.model_name + "'");
}

} // namespace permcheck::scenario
