#include "temper/serialize.hpp"

#include <fstream>
#include <sstream>

namespace temper {

// --- cursor --------------------------------------------------------------------

void JsonCursor::fail(const std::string& message) const { throw InputError("at " + path_ + ": " + message); }

bool JsonCursor::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

JsonCursor JsonCursor::operator[](const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail("missing member \"" + key + "\"");
    return JsonCursor(*it, path_ + "." + key);
}

JsonCursor JsonCursor::operator[](std::size_t i) const {
    if (!j_->is_array()) fail("expected an array");
    if (i >= j_->size()) fail("index " + std::to_string(i) + " out of range");
    return JsonCursor((*j_)[i], path_ + "[" + std::to_string(i) + "]");
}

std::size_t JsonCursor::size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
}

std::string JsonCursor::str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
}

bool JsonCursor::boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
}

std::int64_t JsonCursor::integer() const {
    if (j_->is_number_integer()) return j_->get<std::int64_t>();
    fail("expected an integer");
}

std::size_t JsonCursor::natural() const {
    std::int64_t v = integer();
    if (v < 0) fail("expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

Rational JsonCursor::rational() const {
    if (j_->is_number_integer()) return Rational(j_->get<std::int64_t>());
    if (!j_->is_string()) fail("expected a rational as a \"num/den\" string");
    const std::string text = j_->get<std::string>();
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        fail("malformed rational \"" + text + "\" (" + e.what() + ")");
    }
}

RVec JsonCursor::rvec() const {
    RVec out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].rational());
    return out;
}

IVec JsonCursor::ivec() const {
    IVec out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].integer());
    return out;
}

std::vector<std::size_t> JsonCursor::naturals() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].natural());
    return out;
}

void JsonCursor::only(std::initializer_list<const char*> allowed) const {
    if (!j_->is_object()) fail("expected an object");
    for (auto it = j_->begin(); it != j_->end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) fail("unexpected member \"" + it.key() + "\"");
    }
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

// --- writers ---------------------------------------------------------------------

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const LinearForm& f) {
    Json a = Json::array();
    for (const auto& c : f.coefficients()) a.push_back(c.str());
    return a;
}

namespace {

Json ints(const IVec& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

Json rats(const RVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

std::string sign_string(const std::vector<std::int8_t>& s) {
    std::string out;
    for (auto x : s) out += x > 0 ? '+' : x < 0 ? '-' : '0';
    return out;
}

} // namespace

Json to_json(const TorusSpace& s) {
    Json j;
    j["ambient_dim"] = s.ambient_dim();
    j["dim"] = s.dim();
    j["labels"] = s.labels();
    Json c = Json::array();
    for (const auto& f : s.constraints()) c.push_back(to_json(f));
    j["constraints"] = c;
    return j;
}

Json to_json(const WeightModule& m) {
    Json j;
    j["name"] = m.name();
    j["total_dim"] = m.total_dim();
    Json w = Json::array();
    for (const auto& x : m.weights()) w.push_back(Json{{"form", to_json(x.form)}, {"mult", x.mult}});
    j["weights"] = w;
    return j;
}

Json to_json(const PairSpec& p) {
    Json j;
    j["space"] = to_json(*p.space());
    j["h"] = to_json(p.h_module);
    j["g_over_h"] = to_json(p.g_module);
    if (p.v_module) j["v"] = to_json(*p.v_module);
    j["metadata"] = Json(p.metadata);
    return j;
}

Json to_json(const PLFunction& f) {
    Json j;
    j["space"] = to_json(*f.space());
    Json t = Json::array();
    for (const auto& a : f.abs_terms()) t.push_back(Json{{"coef", a.coef.str()}, {"form", to_json(a.form)}});
    j["abs_terms"] = t;
    j["linear"] = to_json(f.linear_term());
    return j;
}

Json to_json(const NonnegCertificate& c) {
    Json j;
    j["schema"] = kCertificateSchema;
    j["kind"] = "certificate";
    j["function"] = to_json(c.function);
    Json h = Json::array();
    for (const auto& f : c.hyperplanes) h.push_back(to_json(f));
    j["hyperplanes"] = h;
    Json rays = Json::array();
    for (const auto& r : c.rays) rays.push_back(ints(r));
    j["rays"] = rays;
    Json vals = Json::array();
    for (const auto& v : c.ray_values) vals.push_back(v.str());
    j["ray_values"] = vals;
    Json ch = Json::array();
    for (const auto& cell : c.chambers) {
        Json r = Json::array();
        for (auto i : cell.rays) r.push_back(i);
        ch.push_back(Json{{"signs", sign_string(cell.signs)}, {"rays", r}, {"linear_form", to_json(cell.linear_form)}});
    }
    j["chambers"] = ch;
    j["orbits"] = c.orbits;
    Json lin = Json::array();
    for (const auto& l : c.lineality) lin.push_back(ints(l));
    j["lineality"] = lin;
    j["antipodal"] = c.antipodal;
    return j;
}

Json to_json(const Witness& w) {
    Json j;
    j["schema"] = kCertificateSchema;
    j["kind"] = "witness";
    j["function"] = to_json(w.function);
    j["direction"] = rats(w.direction);
    j["value"] = w.value.str();
    return j;
}

Json to_json(const VerifyStats& s) {
    return Json{{"dim", s.dim},
                {"hyperplanes", s.hyperplanes},
                {"chambers", s.chambers},
                {"ray_incidences", s.ray_incidences},
                {"unique_rays", s.unique_rays},
                {"symmetry_orbits", s.symmetry_orbits}};
}

Json to_json(const Verdict& v) {
    Json j;
    j["schema"] = kVerdictSchema;
    j["tempered"] = v.tempered;
    j["metadata"] = Json(v.metadata);
    j["stats"] = to_json(v.result.stats);
    if (!v.tempered) {
        Json at;
        at["direction"] = rats(v.result.witness().direction);
        at["deficit"] = v.result.witness().value.str();
        if (v.rho_h) at["rho_h"] = v.rho_h->str();
        if (v.rho_q) at["rho_g_over_h"] = v.rho_q->str();
        if (v.rho_v) at["rho_v"] = v.rho_v->str();
        j["at_witness"] = at;
    }
    j["deficit"] = to_json(v.deficit);
    if (v.result.nonnegative()) j["evidence"] = to_json(v.result.certificate());
    else j["evidence"] = to_json(v.result.witness());
    return j;
}

Json to_json(const ScanReport& r) {
    Json j;
    j["family"] = r.family;
    j["description"] = r.description;
    j["predicate"] = r.predicate_text;
    j["ranges"] = r.ranges;
    j["parameters"] = r.param_names;
    Json pts = Json::array();
    for (const auto& p : r.points) {
        Json q;
        q["params"] = p.params;
        q["predicted"] = p.predicted;
        q["tempered"] = p.tempered;
        q["chambers"] = p.stats.chambers;
        q["hyperplanes"] = p.stats.hyperplanes;
        q["dim"] = p.stats.dim;
        if (!p.error.empty()) q["error"] = p.error;
        pts.push_back(q);
    }
    j["points"] = pts;
    Json mm = Json::array();
    for (auto i : r.mismatches) mm.push_back(r.points[i].params);
    j["mismatches"] = mm;
    return j;
}

Json to_json(const RMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) rows.push_back(rats(m.row(i)));
    return rows;
}

Json to_json(const MatrixPairInput& m) {
    auto list = [](const std::vector<RMatrix>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_json(x));
        return a;
    };
    return Json{{"ambient_dim", m.ambient_dim},
                {"g_basis", list(m.g_basis)},
                {"h_basis", list(m.h_basis)},
                {"torus_basis", list(m.torus_basis)},
                {"diagonalizer", to_json(m.diagonalizer)}};
}

// --- readers ---------------------------------------------------------------------

namespace {

LinearForm form_from(const JsonCursor& c, std::size_t n) {
    RVec v = c.rvec();
    if (v.size() != n) c.fail("form has " + std::to_string(v.size()) + " coefficients, expected " + std::to_string(n));
    return LinearForm(std::move(v));
}

template <class F>
auto guarded(const JsonCursor& c, F&& f) {
    try {
        return f();
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.rfind("at $", 0) == 0) throw;
        c.fail(what);
    }
}

} // namespace

SpacePtr space_from_json(const JsonCursor& c) {
    c.only({"ambient_dim", "dim", "labels", "constraints"});
    const std::size_t n = c["ambient_dim"].natural();
    std::vector<LinearForm> cons;
    if (c.has("constraints")) {
        auto cc = c["constraints"];
        for (std::size_t i = 0; i < cc.size(); ++i) cons.push_back(form_from(cc[i], n));
    }
    std::vector<std::string> labels;
    if (c.has("labels")) {
        auto l = c["labels"];
        for (std::size_t i = 0; i < l.size(); ++i) labels.push_back(l[i].str());
        if (labels.size() != n) c["labels"].fail("expected one label per ambient coordinate");
    }
    SpacePtr s = guarded(c, [&] { return make_space(n, cons, labels); });
    if (c.has("dim") && c["dim"].natural() != s->dim())
        c["dim"].fail("declared dimension " + std::to_string(c["dim"].natural()) + " but the constraints leave " +
                      std::to_string(s->dim()));
    return s;
}

WeightModule module_from_json(const JsonCursor& c, const SpacePtr& space) {
    c.only({"name", "weights", "total_dim"});
    std::vector<Weight> ws;
    auto w = c["weights"];
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i].only({"form", "mult"});
        Weight x{form_from(w[i]["form"], space->ambient_dim()), w[i]["mult"].integer()};
        if (x.mult <= 0) w[i]["mult"].fail("multiplicity must be positive");
        ws.push_back(std::move(x));
    }
    std::string name = c.has("name") ? c["name"].str() : "";
    WeightModule m = guarded(c, [&] { return WeightModule(space, ws, name); });
    if (c.has("total_dim") && c["total_dim"].integer() != m.total_dim())
        c["total_dim"].fail("declared total_dim disagrees with the multiplicities");
    return m;
}

PairSpec pair_from_json(const JsonCursor& c) {
    c.only({"space", "h", "g_over_h", "v", "metadata"});
    SpacePtr space = space_from_json(c["space"]);
    PairSpec p;
    p.h_module = module_from_json(c["h"], space);
    p.g_module = module_from_json(c["g_over_h"], space);
    if (c.has("v")) p.v_module = module_from_json(c["v"], space);
    if (c.has("metadata")) {
        auto m = c["metadata"];
        if (!m.json().is_object()) m.fail("expected an object");
        for (auto it = m.json().begin(); it != m.json().end(); ++it) {
            if (!it.value().is_string()) JsonCursor(it.value(), m.path() + "." + it.key()).fail("expected a string");
            p.metadata[it.key()] = it.value().get<std::string>();
        }
    }
    return p;
}

PLFunction pl_from_json(const JsonCursor& c) {
    c.only({"space", "abs_terms", "linear"});
    SpacePtr space = space_from_json(c["space"]);
    const std::size_t n = space->ambient_dim();
    std::vector<AbsTerm> terms;
    auto t = c["abs_terms"];
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i].only({"coef", "form"});
        terms.push_back({t[i]["coef"].rational(), form_from(t[i]["form"], n)});
    }
    LinearForm lin = c.has("linear") ? form_from(c["linear"], n) : LinearForm::zero(n);
    return guarded(c, [&] { return PLFunction(space, terms, lin); });
}

NonnegCertificate certificate_from_json(const JsonCursor& c) {
    c.only({"schema", "kind", "function", "hyperplanes", "rays", "ray_values", "chambers", "orbits", "lineality",
            "antipodal"});
    if (c["schema"].str() != kCertificateSchema) c["schema"].fail("unsupported schema");
    if (c["kind"].str() != "certificate") c["kind"].fail("expected \"certificate\"");
    NonnegCertificate cert;
    cert.function = pl_from_json(c["function"]);
    const std::size_t n = cert.function.space()->ambient_dim();
    auto h = c["hyperplanes"];
    for (std::size_t i = 0; i < h.size(); ++i) cert.hyperplanes.push_back(form_from(h[i], n));
    auto r = c["rays"];
    for (std::size_t i = 0; i < r.size(); ++i) cert.rays.push_back(r[i].ivec());
    auto v = c["ray_values"];
    for (std::size_t i = 0; i < v.size(); ++i) cert.ray_values.push_back(v[i].rational());
    auto ch = c["chambers"];
    for (std::size_t i = 0; i < ch.size(); ++i) {
        auto cc = ch[i];
        cc.only({"signs", "rays", "linear_form"});
        NonnegCertificate::Cell cell;
        for (char s : cc["signs"].str()) {
            if (s != '+' && s != '-' && s != '0') cc["signs"].fail("signs must use '+', '-' or '0'");
            cell.signs.push_back(static_cast<std::int8_t>(s == '+' ? 1 : s == '-' ? -1 : 0));
        }
        cell.rays = cc["rays"].naturals();
        cell.linear_form = form_from(cc["linear_form"], n);
        cert.chambers.push_back(std::move(cell));
    }
    if (c.has("orbits")) {
        auto o = c["orbits"];
        for (std::size_t i = 0; i < o.size(); ++i) cert.orbits.push_back(o[i].naturals());
    }
    if (c.has("lineality")) {
        auto l = c["lineality"];
        for (std::size_t i = 0; i < l.size(); ++i) cert.lineality.push_back(l[i].ivec());
    }
    if (c.has("antipodal")) cert.antipodal = c["antipodal"].boolean();
    return cert;
}

Witness witness_from_json(const JsonCursor& c) {
    c.only({"schema", "kind", "function", "direction", "value"});
    if (c["schema"].str() != kCertificateSchema) c["schema"].fail("unsupported schema");
    if (c["kind"].str() != "witness") c["kind"].fail("expected \"witness\"");
    Witness w;
    w.function = pl_from_json(c["function"]);
    w.direction = c["direction"].rvec();
    w.value = c["value"].rational();
    return w;
}

RMatrix matrix_from_json(const JsonCursor& c, std::size_t n) {
    if (c.size() != n) c.fail("expected " + std::to_string(n) + " rows");
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        RVec row = c[i].rvec();
        if (row.size() != n) c[i].fail("expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
    }
    return m;
}

MatrixPairInput matrices_from_json(const JsonCursor& c) {
    c.only({"ambient_dim", "g_basis", "h_basis", "torus_basis", "diagonalizer"});
    MatrixPairInput in;
    in.ambient_dim = c["ambient_dim"].natural();
    if (in.ambient_dim == 0) c["ambient_dim"].fail("must be positive");
    auto list = [&](const char* key) {
        std::vector<RMatrix> out;
        auto l = c[key];
        for (std::size_t i = 0; i < l.size(); ++i) out.push_back(matrix_from_json(l[i], in.ambient_dim));
        return out;
    };
    in.g_basis = list("g_basis");
    in.h_basis = list("h_basis");
    in.torus_basis = list("torus_basis");
    in.diagonalizer = c.has("diagonalizer") ? matrix_from_json(c["diagonalizer"], in.ambient_dim)
                                            : RMatrix::identity(in.ambient_dim);
    return in;
}

// --- spec files --------------------------------------------------------------------

PairSpec family_from_json(const JsonCursor& c) {
    const std::string name = c["name"].str();
    auto mode_of = [&]() {
        if (!c.has("torus")) return TorusMode::Derived;
        std::string t = c["torus"].str();
        if (t == "derived") return TorusMode::Derived;
        if (t == "full") return TorusMode::FullDiagonal;
        c["torus"].fail("expected \"derived\" or \"full\"");
    };
    if (name == "sl_block") {
        c.only({"name", "pattern", "sizes", "kinds", "upper", "torus"});
        auto sizes = c["sizes"].naturals();
        BlockPattern p;
        if (c.has("pattern")) {
            if (c.has("kinds") || c.has("upper")) c.fail("give either \"pattern\" or \"kinds\"/\"upper\", not both");
            const BlockPreset& preset = guarded(c["pattern"], [&]() -> const BlockPreset& {
                return find_preset(c["pattern"].str(), sizes.size());
            });
            p = guarded(c["sizes"], [&] { return preset.pattern(sizes); });
        } else {
            p.sizes = sizes;
            auto k = c["kinds"];
            for (std::size_t i = 0; i < k.size(); ++i) {
                std::string s = k[i].str();
                if (s == "full") p.kinds.push_back(BlockKind::Full);
                else if (s == "identity") p.kinds.push_back(BlockKind::Identity);
                else k[i].fail("expected \"full\" or \"identity\"");
            }
            if (p.kinds.size() != sizes.size()) k.fail("expected one kind per block");
            if (c.has("upper")) {
                auto u = c["upper"];
                for (std::size_t i = 0; i < u.size(); ++i) {
                    auto pair = u[i].naturals();
                    if (pair.size() != 2 || pair[0] < 1 || pair[1] < 1)
                        u[i].fail("expected a pair of block numbers counted from 1");
                    p.upper.insert({pair[0] - 1, pair[1] - 1});
                }
            }
        }
        TorusMode mode = mode_of();
        PairSpec spec = build_sl_block(p, mode);
        if (c.has("pattern")) spec.metadata["pattern"] = c["pattern"].str();
        return spec;
    }
    if (name == "product_sl" || name == "product_sp") {
        c.only({"name", "parts"});
        auto parts = c["parts"].naturals();
        return guarded(c["parts"], [&] { return name == "product_sl" ? build_product_in_sl(parts) : build_product_in_sp(parts); });
    }
    if (name == "so_pair") {
        c.only({"name", "params"});
        auto v = c["params"].naturals();
        if (v.size() != 4) c["params"].fail("expected [p1, q1, p2, q2]");
        return build_so_pair(v[0], v[1], v[2], v[3]);
    }
    if (name == "so_in_sl") {
        c.only({"name", "params"});
        auto v = c["params"].naturals();
        if (v.size() != 2) c["params"].fail("expected [p, q]");
        return guarded(c["params"], [&] { return build_so_in_sl(v[0], v[1]); });
    }
    if (name == "sp_in_sl") {
        c.only({"name", "m"});
        auto m = c["m"].natural();
        return guarded(c["m"], [&] { return build_sp_in_sl(m); });
    }
    if (name == "complex_product") {
        c.only({"name", "type", "m", "n"});
        std::string t = c["type"].str();
        ComplexFamily f = ComplexFamily::SL;
        if (t == "sl") f = ComplexFamily::SL;
        else if (t == "so") f = ComplexFamily::SO;
        else if (t == "sp") f = ComplexFamily::SP;
        else c["type"].fail("expected \"sl\", \"so\" or \"sp\"");
        auto m = c["m"].natural(), n = c["n"].natural();
        return guarded(c, [&] { return build_complex_product(f, m, n); });
    }
    c["name"].fail("unknown family \"" + name + "\"");
}

SpecRequest parse_spec(const Json& doc) {
    JsonCursor c(doc);
    if (!doc.is_object()) c.fail("expected an object");
    if (!c.has("schema")) c.fail("missing member \"schema\"");
    if (c["schema"].str() != kSpecSchema) c["schema"].fail(std::string("expected \"") + kSpecSchema + "\"");
    c.only({"schema", "family", "tensor", "pair", "matrices", "v", "description"});
    int modes = c.has("family") + c.has("tensor") + c.has("pair") + c.has("matrices");
    if (modes != 1) c.fail("exactly one of \"family\", \"tensor\", \"pair\", \"matrices\" must be present");

    SpecRequest r;
    if (c.has("family")) {
        r.mode = SpecRequest::Mode::Family;
        r.pair = family_from_json(c["family"]);
    } else if (c.has("pair")) {
        r.mode = SpecRequest::Mode::Pair;
        r.pair = pair_from_json(c["pair"]);
    } else if (c.has("matrices")) {
        r.mode = SpecRequest::Mode::Matrices;
        MatrixPairInput in = matrices_from_json(c["matrices"]);
        r.pair = extract_weights(in);
    } else {
        r.mode = SpecRequest::Mode::Tensor;
        auto t = c["tensor"];
        t.only({"variant", "k", "l", "n", "a", "b", "c"});
        TensorQuestion q;
        q.variant = static_cast<int>(t["variant"].integer());
        if (q.variant == 1) q.params = {t["k"].natural(), t["l"].natural(), t["n"].natural()};
        else if (q.variant == 2 || q.variant == 3) q.params = {t["a"].natural(), t["b"].natural(), t["c"].natural()};
        else t["variant"].fail("expected 1, 2 or 3");
        guarded(t, [&] { return map_tensor_question(q); });
        r.tensor = q;
    }
    // Optional extra module V over the pair's torus.
    if (c.has("v")) {
        if (!r.pair) c["v"].fail("an extra module needs a pair, family or matrices input");
        if (r.pair->v_module) c["v"].fail("the pair already carries an extra module");
        r.pair->v_module = module_from_json(c["v"], r.pair->space());
    }
    return r;
}

Verdict run_spec(const SpecRequest& request, const CheckOptions& options) {
    if (request.tensor) return tensor_product_check(*request.tensor, options);
    return check(*request.pair, options);
}

} // namespace temper
