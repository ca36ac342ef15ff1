#include "demazure/job.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "demazure/error.hpp"

namespace demazure {

void JobConfig::merge_json(const Json& j) {
    if (!j.is_object()) throw config_error("InvalidArgument", "configuration must be a JSON object");
    try {
        if (j.contains("type")) datum["type"] = j.at("type");
        if (j.contains("lattice")) datum["lattice"] = j.at("lattice");
        if (j.contains("ring")) ring = j.at("ring").get<std::string>();
        if (j.contains("fgl")) fgl = j.at("fgl");
        if (j.contains("prec")) prec = j.at("prec").get<int>();
        if (j.contains("slack")) {
            if (j.at("slack").is_null()) {
                slack.reset();
            } else {
                slack = j.at("slack").get<int>();
            }
        }
        if (j.contains("words")) words = j.at("words").get<std::map<std::string, std::string>>();
        if (j.contains("seed")) seed = j.at("seed").get<uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error("InvalidArgument", std::string("bad configuration value: ") + e.what());
    }
    static const std::vector<std::string> known{"type", "lattice", "ring", "fgl", "prec", "slack", "words", "seed"};
    for (const auto& [k, v] : j.items()) {
        if (std::find(known.begin(), known.end(), k) == known.end()) throw config_error("InvalidArgument", "unknown configuration key '" + k + "'");
    }
}

Json JobConfig::to_json() const {
    Json j;
    j["type"] = datum.at("type");
    j["lattice"] = datum.contains("lattice") ? datum.at("lattice") : Json("sc");
    j["ring"] = ring;
    j["fgl"] = fgl;
    j["prec"] = prec;
    j["slack"] = slack ? Json(*slack) : Json(nullptr);
    j["words"] = Json::object();
    for (const auto& [k, v] : words) j["words"][k] = v;
    j["seed"] = seed;
    return j;
}

Job Job::build(const JobConfig& cfg, int min_prec) {
    if (cfg.prec < 0) throw config_error("InvalidArgument", "prec must be nonnegative");
    if (cfg.slack && *cfg.slack < 0) throw config_error("InvalidArgument", "slack must be nonnegative");
    Job job;
    job.config = cfg;
    DatumPtr datum = RootDatum::build(datum_spec_from_json(cfg.datum));
    const int n = datum->num_positive();
    job.working_prec = std::max({cfg.prec + cfg.slack.value_or(n + 2), min_prec, 1});
    RingPtr ring = Ring::parse(cfg.ring);
    Json fgl = cfg.fgl;
    // A custom law without "prec" is an exact polynomial.
    if (fgl.is_object() && fgl.contains("custom") && fgl.at("custom").is_object() && !fgl.at("custom").contains("prec")) {
        fgl["custom"]["prec"] = job.working_prec + 2;
    }
    LawPtr law = law_from_json(fgl, ring, job.working_prec + 2);
    FGAOptions opts;
    opts.prec = job.working_prec;
    job.ctx = FGAContext::create(datum, law, opts);
    job.qw = std::make_shared<TwistedAlgebra>(job.ctx);
    std::vector<std::vector<int>> words;
    if (!cfg.words.empty()) {
        const WeylGroup& W = job.ctx->weyl();
        for (int w = 0; w < W.size(); ++w) words.push_back(W.word(w));
        for (const auto& [key, value] : cfg.words) {
            auto w = W.parse_word(key);
            if (!w) throw config_error("InvalidWord", "word override key '" + key + "' is not a Weyl element word");
            words[static_cast<std::size_t>(*w)] = parse_word_sequence(value, datum->rank());
        }
    }
    job.df = std::make_shared<DemazureAlgebra>(job.qw, words);
    return job;
}

namespace {

class ExprParser {
public:
    ExprParser(const std::string& text, const TwistedAlgebra& T) : s_(text), T_(T) {}

    QWElem parse() {
        QWElem v = sum();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    const std::string& s_;
    const TwistedAlgebra& T_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        const std::string col = std::to_string(pos_ + 1);
        throw config_error("ParseError", "parse error at column " + col + ": " + what, {{"column", col}, {"input", s_}});
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    Int integer() {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && s_[start] == '-')) {
            pos_ = start;
            fail("expected an integer");
        }
        return Int::parse(s_.substr(start, pos_ - start));
    }

    QWElem sum() {
        QWElem v = product();
        for (;;) {
            if (accept('+')) {
                v = T_.qw_add(v, product());
            } else if (accept('-')) {
                v = T_.qw_sub(v, product());
            } else {
                return v;
            }
        }
    }
    QWElem product() {
        QWElem v = factor();
        while (accept('*')) v = T_.qw_mul(v, factor());
        return v;
    }
    QWElem factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const FGAContext& c = T_.ctx();
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            QWElem v = sum();
            expect(')');
            return v;
        }
        if (ch == '-') {
            ++pos_;
            return T_.qw_sub({}, factor());
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
            Int k = integer();
            return T_.scalar(T_.q(c.constant(RingElem::from_int(c.ring(), k))));
        }
        if (ch == 'x') {
            ++pos_;
            expect('(');
            Weight lambda;
            skip();
            if (!(pos_ < s_.size() && s_[pos_] == ')')) {
                do {
                    Int k = integer();
                    if (!k.fits_int64()) fail("coordinate out of range");
                    lambda.push_back(k.to_int64());
                } while (accept(','));
            }
            std::size_t close = pos_;
            expect(')');
            if (static_cast<int>(lambda.size()) != c.rank()) {
                pos_ = close;
                fail("x(...) needs " + std::to_string(c.rank()) + " lattice coordinates");
            }
            return T_.scalar(T_.q(c.x_of(lambda)));
        }
        if (ch == 'X') {
            ++pos_;
            expect('[');
            std::size_t start = pos_;
            std::size_t close = s_.find(']', pos_);
            if (close == std::string::npos) {
                pos_ = s_.size();
                fail("expected ']'");
            }
            std::vector<int> word;
            try {
                word = parse_word_sequence(s_.substr(start, close - start), c.rank());
            } catch (const Error& e) {
                fail(e.what());
            }
            pos_ = close + 1;
            return T_.x_word(word);
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }
};

Json out_series(const TruncSeries& s, int prec) { return series_to_json(s.truncated(std::min(s.prec(), prec))); }

Json out_qw(const QWElem& a, const WeylGroup& W, int prec) {
    QWElem t;
    for (const auto& [w, q] : a) {
        QElem c = q;
        c.num = c.num.truncated(std::min(c.num.prec(), prec + c.den_degree()));
        t.emplace(w, c);
    }
    return qw_to_json(t, W);
}

Json out_df(const DFElem& d, const WeylGroup& W, int prec) {
    Json arr = Json::array();
    for (const auto& [w, c] : d.coeffs) arr.push_back(Json{{"w", W.word_string(w)}, {"coef", out_series(c, prec)}});
    return arr;
}

Json out_slice(const CoproductSlice& s, const WeylGroup& W, int prec) {
    Json arr = Json::array();
    for (const auto& [k, c] : s) arr.push_back(Json{{"u", W.word_string(k.first)}, {"v", W.word_string(k.second)}, {"coef", out_series(c, prec)}});
    return arr;
}

Json weight_json(const Weight& w) { return Json(w); }

void need_args(const std::vector<std::string>& args, std::size_t lo, std::size_t hi, const std::string& usage) {
    if (args.size() < lo || args.size() > hi) throw config_error("InvalidArgument", "usage: " + usage);
}

int parse_int_arg(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("InvalidArgument", what + " must be an integer, got '" + s + "'");
    }
}

std::vector<int> word_arg(const std::string& s, int rank) { return parse_word_sequence(s, rank); }

Json cmd_roots(const Job& job) {
    const RootDatum& D = job.ctx->datum();
    Json r;
    r["rank"] = D.rank();
    r["cartan"] = matrix_to_json(D.cartan());
    r["cartan_determinant"] = int_to_json(D.cartan_determinant());
    r["lattice_basis"] = matrix_to_json(D.basis());
    Json roots = Json::array();
    for (const auto& root : D.roots()) {
        Json e;
        e["index"] = root.index;
        e["positive"] = root.positive;
        e["height"] = root.height;
        e["simple_root_coords"] = weight_json(root.root_coords);
        e["weight_coords"] = weight_json(root.weight_coords);
        e["lattice_coords"] = weight_json(root.lattice_coords);
        e["coroot_coords"] = weight_json(root.coroot_coords);
        roots.push_back(std::move(e));
    }
    r["roots"] = std::move(roots);
    return r;
}

Json cmd_weyl(const Job& job) {
    const WeylGroup& W = job.ctx->weyl();
    Json r;
    r["size"] = W.size();
    r["longest"] = W.word_string(W.longest());
    Json els = Json::array();
    for (int w = 0; w < W.size(); ++w) {
        els.push_back(Json{{"index", w}, {"word", W.word_string(w)}, {"length", W.length(w)}, {"inverse", W.word_string(W.inverse(w))},
                           {"basis_word", word_to_string(job.df->words()[static_cast<std::size_t>(w)])}});
    }
    r["elements"] = std::move(els);
    return r;
}

Json cmd_torsion(const Job& job) {
    TorsionResult t = torsion_gcd(*job.df);
    const int N = job.ctx->datum().num_positive();
    Json r;
    r["gcd"] = int_to_json(t.gcd);
    r["degree"] = N;
    Json values = Json::array();
    for (std::size_t k = 0; k < t.monomials.size(); ++k) {
        values.push_back(Json{{"exp", t.monomials[k].exponents(job.ctx->rank())}, {"value", int_to_json(t.values[k])}});
    }
    r["values"] = std::move(values);
    r["u0"] = series_to_json(t.u0);
    r["vanishing"] = Json{{"sequences_checked", t.sequences_checked}, {"ok", t.vanishing_ok}, {"witness", t.vanishing_witness}};
    Json primes = Json::array();
    for (const auto& [type, rank] : job.ctx->datum().spec().components) {
        for (int p : torsion_primes(type, rank)) {
            if (std::find(primes.begin(), primes.end(), Json(p)) == primes.end()) primes.push_back(p);
        }
    }
    r["table_torsion_primes"] = std::move(primes);
    return r;
}

Json cmd_charmap(const Job& job) {
    CharmapResult c = charmap_surjectivity(*job.df);
    const WeylGroup& W = job.ctx->weyl();
    Json r;
    r["surjective"] = c.surjective;
    r["obstruction"] = int_to_json(c.obstruction);
    Json inv = Json::array();
    for (const auto& v : c.image_invariants) inv.push_back(int_to_json(v));
    r["image_invariants"] = std::move(inv);
    r["top_degree_solvable"] = c.top_degree_solvable;
    if (!c.surjective) {
        r["failure"] = c.failure;
        return r;
    }
    r["u0_prime"] = series_to_json(c.u0_prime);
    Json order = Json::array();
    for (int w = 0; w < W.size(); ++w) order.push_back(W.word_string(w));
    r["order"] = order;
    r["certificate"] = matrix_to_json(c.certificate);
    Json diag = Json::array();
    for (int v : c.diagonal) diag.push_back(W.word_string(v));
    r["diagonal_columns"] = std::move(diag);
    r["unitriangular"] = c.unitriangular;
    if (!c.failure.empty()) r["failure"] = c.failure;
    DualAlgebra dual(job.df);
    BorelReport b = borel_presentation_check(dual, c);
    r["borel"] = Json{{"ok", b.ok}, {"determinant", int_to_json(b.determinant)}, {"epsilon_matrix", matrix_to_json(b.epsilon_matrix)},
                      {"product_checks", b.product_checks}};
    return r;
}

}  // namespace

QWElem parse_expr(const std::string& text, const TwistedAlgebra& T) { return ExprParser(text, T).parse(); }

int exit_code_for(const Error& e) {
    switch (e.error_class()) {
        case ErrorClass::Config:
            return 2;
        case ErrorClass::Hypothesis:
            return 3;
        case ErrorClass::PrecisionExhausted:
            return 4;
    }
    return 2;
}

CommandOutput error_output(const Error& e, const std::vector<std::string>& args) {
    static const char* names[] = {"config", "hypothesis", "precision"};
    Json err;
    err["class"] = names[static_cast<int>(e.error_class())];
    err["reason"] = e.reason();
    err["message"] = e.what();
    err["details"] = Json::object();
    for (const auto& [k, v] : e.details()) err["details"][k] = v;
    Json doc;
    doc["command"] = args.empty() ? Json(nullptr) : Json(args[0]);
    doc["args"] = args.size() > 1 ? Json(std::vector<std::string>(args.begin() + 1, args.end())) : Json::array();
    doc["error"] = std::move(err);
    return {std::move(doc), exit_code_for(e)};
}

CommandOutput run_command(const JobConfig& cfg, const std::vector<std::string>& args) {
    if (args.empty()) throw config_error("InvalidArgument", "no command given");
    const std::string& cmd = args[0];
    try {
        const int n = RootDatum::build(datum_spec_from_json(cfg.datum))->num_positive();
        int min_prec = 0;
        if (cmd == "torsion") min_prec = n;
        if (cmd == "charmap") min_prec = 2 * n;
        Job job = Job::build(cfg, min_prec);
        const WeylGroup& W = job.ctx->weyl();
        const int rank = job.ctx->rank();
        const int P = cfg.prec;
        Json result;
        int exit_code = 0;

        if (cmd == "roots") {
            need_args(args, 1, 1, "roots");
            result = cmd_roots(job);
        } else if (cmd == "weyl") {
            need_args(args, 1, 1, "weyl");
            result = cmd_weyl(job);
        } else if (cmd == "rebase") {
            need_args(args, 2, 2, "rebase <word>");
            auto word = word_arg(args[1], rank);
            const DFElem& r = job.df->rebase_word(word);
            result["word"] = word_to_string(word);
            result["reduced"] = W.is_reduced(word);
            result["element"] = W.word_string(W.word_to_element(word));
            result["coefficients"] = out_df(r, W, P);
            result["certified"] = std::min(r.certified(job.working_prec), P);
        } else if (cmd == "mul") {
            need_args(args, 3, 3, "mul <expr> <expr>");
            QWElem a = parse_expr(args[1], *job.qw);
            QWElem b = parse_expr(args[2], *job.qw);
            QWElem ab = job.qw->qw_mul(a, b);
            DFElem x = job.df->from_qw(ab);
            result["lhs"] = args[1];
            result["rhs"] = args[2];
            result["qw"] = out_qw(ab, W, P);
            result["x_basis"] = out_df(x, W, P);
            result["certified"] = std::min(x.certified(job.working_prec), P);
        } else if (cmd == "coproduct") {
            need_args(args, 2, 2, "coproduct <word>");
            auto word = word_arg(args[1], rank);
            const DFElem& r = job.df->rebase_word(word);
            CoproductSlice total;
            for (const auto& [w, c] : r.coeffs) {
                for (const auto& [k, s] : job.df->coproduct_basis(w)) {
                    TruncSeries term = mul(c, s);
                    auto it = total.find(k);
                    if (it == total.end()) {
                        total.emplace(k, term);
                    } else {
                        it->second += term;
                    }
                }
            }
            int cert = P;
            for (const auto& [k, s] : total) cert = std::min(cert, s.prec());
            result["word"] = word_to_string(word);
            result["coproduct"] = out_slice(total, W, P);
            result["certified"] = cert;
        } else if (cmd == "dual-mult-table") {
            need_args(args, 1, 1, "dual-mult-table");
            CoproductTable t = job.df->coproduct_table();
            for (auto& s : t.slices) {
                for (auto& [k, c] : s) c = c.truncated(std::min(c.prec(), P));
            }
            result["convention"] = "X*_u X*_v = sum_w c(u|v|w) X*_w";
            result["structure_constants"] = coproduct_table_to_json(t, W);
            result["certified"] = t.certified(P);
        } else if (cmd == "eta") {
            need_args(args, 3, 3, "eta <i> <j>");
            int i = parse_int_arg(args[1], "i");
            int j = parse_int_arg(args[2], "j");
            if (i < 1 || j < 1 || i > rank || j > rank || i == j) throw config_error("InvalidArgument", "eta needs two distinct simple indices in 1.." + std::to_string(rank));
            auto eta = job.df->eta_coeffs(i - 1, j - 1);
            DFElem e;
            e.coeffs = eta;
            result["i"] = i;
            result["j"] = j;
            result["eta"] = out_df(e, W, P);
            result["certified"] = std::min(e.certified(job.working_prec), P);
        } else if (cmd == "kappa") {
            need_args(args, 1, 2, "kappa [root]");
            const RootDatum& D = job.ctx->datum();
            std::vector<int> roots;
            if (args.size() == 2) {
                int r = parse_int_arg(args[1], "root");
                if (r < 0 || r >= static_cast<int>(D.roots().size())) throw hypothesis_error("NotARoot", "root index out of range", {{"root", args[1]}});
                roots.push_back(r);
            } else {
                for (int r = 0; r < static_cast<int>(D.roots().size()); ++r) roots.push_back(r);
            }
            Json arr = Json::array();
            for (int r : roots) {
                arr.push_back(Json{{"root", r}, {"simple_root_coords", weight_json(D.root(r).root_coords)}, {"kappa", out_series(job.ctx->kappa(r), P)}});
            }
            result["kappa"] = std::move(arr);
        } else if (cmd == "torsion") {
            need_args(args, 1, 1, "torsion");
            result = cmd_torsion(job);
        } else if (cmd == "charmap") {
            need_args(args, 1, 1, "charmap");
            result = cmd_charmap(job);
        } else if (cmd == "verify") {
            need_args(args, 2, 2, "verify <suite>");
            SuiteReport rep = run_verify_suite(args[1], job.df, cfg.seed);
            result["suite"] = rep.suite;
            result["passed"] = rep.passed();
            result["failures"] = rep.failures();
            Json checks = Json::array();
            for (const auto& c : rep.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            result["checks"] = std::move(checks);
            exit_code = rep.passed() ? 0 : 1;
        } else {
            throw config_error("InvalidArgument", "unknown command '" + cmd + "'");
        }

        Json doc;
        doc["command"] = cmd;
        doc["args"] = std::vector<std::string>(args.begin() + 1, args.end());
        doc["config"] = cfg.to_json();
        doc["working_prec"] = job.working_prec;
        doc["result"] = std::move(result);
        return {std::move(doc), exit_code};
    } catch (const std::invalid_argument& e) {
        throw config_error("InvalidArgument", e.what());
    } catch (const nlohmann::json::exception& e) {
        throw config_error("InvalidArgument", e.what());
    }
}

namespace {

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string human_summary(const Json& doc) {
    std::ostringstream os;
    if (doc.contains("error")) {
        const Json& e = doc.at("error");
        os << "error (" << scalar_text(e.at("class")) << ", " << scalar_text(e.at("reason")) << "): " << scalar_text(e.at("message")) << "\n";
        return os.str();
    }
    os << scalar_text(doc.at("command"));
    for (const auto& a : doc.at("args")) os << ' ' << scalar_text(a);
    const Json& c = doc.at("config");
    os << "\n  " << scalar_text(c.at("type")) << ' ' << scalar_text(c.at("lattice")) << ", ring " << scalar_text(c.at("ring")) << ", law "
       << scalar_text(c.at("fgl")) << ", prec " << scalar_text(c.at("prec")) << " (working " << scalar_text(doc.at("working_prec")) << ")\n";
    const Json& r = doc.at("result");
    if (r.contains("checks")) {
        for (const auto& ch : r.at("checks")) {
            os << "  [" << (ch.at("passed").get<bool>() ? "pass" : "FAIL") << "] " << scalar_text(ch.at("name"));
            if (!ch.at("detail").get<std::string>().empty()) os << ": " << scalar_text(ch.at("detail"));
            os << "\n";
        }
    }
    for (const auto& [k, v] : r.items()) {
        if (k == "checks") continue;
        if (v.is_array()) {
            os << "  " << k << ": " << v.size() << " entries\n";
        } else if (v.is_object()) {
            os << "  " << k << ": " << (v.contains("terms") ? v.at("terms").size() : v.size()) << (v.contains("terms") ? " terms\n" : " fields\n");
        } else {
            os << "  " << k << ": " << scalar_text(v) << "\n";
        }
    }
    return os.str();
}

}  // namespace demazure
