#include "drh/jsonio.hpp"

#include "drh/fcohft.hpp"

namespace drh {

json to_json(const ParamRational& c) {
    json arr = json::array();
    for (const auto& [e, q] : c.terms()) {
        json t;
        t["xi"] = e[0];
        t["G"] = std::vector<int>(e.begin() + 1, e.end());
        t["q"] = rat_to_string(q);
        arr.push_back(std::move(t));
    }
    return arr;
}

json to_json(const DiffPoly& p) {
    json j;
    j["ctx"] = {{"N", p.ctx().rank}, {"Dmax", p.ctx().dmax}, {"Emax", p.ctx().emax}};
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["eps"] = m.eps;
        json fs = json::array();
        for (const auto& f : m.factors) fs.push_back({f[0], f[1], f[2]});
        t["factors"] = std::move(fs);
        t["coeff"] = to_json(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

DiffPoly diffpoly_from_json(const json& j) {
    TruncationContext ctx(j.at("ctx").at("N").get<int>(), j.at("ctx").at("Dmax").get<int>(),
                          j.at("ctx").at("Emax").get<int>());
    DiffPoly p(ctx);
    for (const auto& t : j.at("terms")) {
        DiffMonomial m;
        m.eps = t.at("eps").get<int>();
        for (const auto& f : t.at("factors"))
            m.factors.push_back({f.at(0).get<int>(), f.at(1).get<int>(), f.at(2).get<int>()});
        m.normalize();
        ParamRational c(ctx.num_params());
        for (const auto& pm : t.at("coeff")) {
            std::vector<int> e;
            e.push_back(pm.at("xi").get<int>());
            for (const auto& g : pm.at("G")) e.push_back(g.get<int>());
            ParamRational term = ParamRational::constant(ctx.num_params(),
                                                         rat_from_string(pm.at("q").get<std::string>()));
            for (size_t i = 0; i < e.size(); ++i)
                term *= ParamRational::symbol(ctx.num_params(), static_cast<int>(i)).pow(e[i]);
            c += term;
        }
        p.add_term(std::move(m), c);
    }
    return p;
}

json to_json(const MultiPoly& p) {
    json j;
    j["nvars"] = p.nvars();
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["k"] = e;
        t["q"] = rat_to_string(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

json to_json(const StableTree& t) {
    json j;
    json verts = json::array();
    for (int v = 0; v < t.n_vertices(); ++v) {
        const auto& vx = t.verts[static_cast<size_t>(v)];
        verts.push_back({{"id", v},
                         {"parent", vx.parent},
                         {"genus", vx.genus},
                         {"level", vx.level},
                         {"legs", vx.legs}});
    }
    j["vertices"] = std::move(verts);
    j["n_legs"] = t.n_legs;
    return j;
}

json to_json(const DecoratedTree& t, const std::vector<LinearForm>& subtree_sums) {
    json j = to_json(t.tree);
    json labels = json::array();
    for (int v = 0; v < t.tree.n_vertices(); ++v)
        labels.push_back(t.label[static_cast<size_t>(v)]);
    j["labels"] = std::move(labels);
    json legs = json::array();
    for (int l = 1; l <= t.tree.n_legs; ++l)
        legs.push_back({{"leg", l},
                        {"vertex", t.tree.leg_vertex(l)},
                        {"psi", t.psi_exponent(l)},
                        {"fed_index", t.leg_orig[static_cast<size_t>(l)]}});
    j["legs"] = std::move(legs);
    json edges = json::array();
    for (int v = 1; v < t.tree.n_vertices(); ++v) {
        std::vector<std::string> mult;
        for (const auto& c : subtree_sums[static_cast<size_t>(v)]) mult.push_back(rat_to_string(c));
        edges.push_back({{"parent", t.tree.verts[static_cast<size_t>(v)].parent},
                         {"child", v},
                         {"mult_toward_parent", mult}});
    }
    j["edges"] = std::move(edges);
    j["weight"] = to_json(t.weight);
    j["family"] = family_signature(t);
    return j;
}

VertexIntegralQuery query_from_json(const json& j) {
    VertexIntegralQuery q;
    q.genus = j.at("genus").get<int>();
    q.nvars = j.at("nvars").get<int>();
    for (const auto& pt : j.at("points")) {
        QueryPoint p;
        p.psi = pt.at("psi").get<int>();
        for (const auto& c : pt.at("mult")) {
            if (c.is_string())
                p.mult.push_back(rat_from_string(c.get<std::string>()));
            else
                p.mult.push_back(Rational(c.get<long>()));
        }
        q.points.push_back(std::move(p));
    }
    return q;
}

}  // namespace drh
