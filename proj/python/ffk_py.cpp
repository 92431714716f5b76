#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ffk/bounds.hpp"
#include "ffk/divisor_calc.hpp"
#include "ffk/errors.hpp"
#include "ffk/fermat_model.hpp"
#include "ffk/polyarith.hpp"

namespace py = pybind11;
using namespace ffk;

namespace {

py::object to_int(const Integer& z) { return py::module_::import("builtins").attr("int")(z.get_str()); }

py::object to_fraction(const Rational& q)
{
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_int(q.get_num()), to_int(q.get_den()));
}

fermat::FermatParams params(long p, long m, std::optional<long> s)
{
    return s ? fermat::FermatParams::make(p, m, *s) : fermat::FermatParams::derive(p, m);
}

// Owns one built model; the Python side never sees component ids.
class Model {
public:
    Model(long p, long m, std::optional<long> s) : model_(fermat::build_model(params(p, m, s))) {}

    py::dict params_dict() const
    {
        py::dict d;
        d["p"] = model_.params.p;
        d["m"] = model_.params.m;
        d["s"] = model_.params.s;
        d["N"] = model_.params.N;
        d["g"] = model_.params.g;
        return d;
    }

    std::size_t size() const { return model_.config.size(); }

    std::map<std::string, std::size_t> census() const
    {
        std::map<std::string, std::size_t> out;
        for (const auto& [kind, n] : fermat::census(model_)) out[fermat::kind_name(kind)] = n;
        return out;
    }

    std::vector<std::tuple<std::string, bool, std::string>> validate() const
    {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& c : fiber::validate(model_.config)) out.emplace_back(c.name, c.pass, c.detail);
        for (const auto& c : fermat::fundamental_cycle_checks(model_)) out.emplace_back(c.name, c.pass, c.detail);
        out.emplace_back("transversality", fermat::transversality_check(model_.config, model_.params), "");
        return out;
    }

    py::dict cusp_values(long i, long k) const
    {
        const auto& cusp = model_.cusp(i, k);
        const auto vs = divisors::v_s(model_, cusp);
        const auto gs = divisors::g_s(model_, cusp);
        const auto u = divisors::u_s(model_, cusp);
        const auto beta = divisors::beta_values(model_, cusp);
        py::dict d;
        d["v_s_sq"] = to_fraction(fiber::pair(model_.config, vs, vs));
        d["g_s_sq"] = to_fraction(fiber::pair(model_.config, gs, gs));
        d["per_prime_geometric"] = to_fraction(divisors::per_prime_geometric(model_, cusp));
        d["vsussq"] = to_fraction(divisors::vsussq_value(model_, cusp, u));
        d["kus"] = to_fraction(divisors::kus_value(model_, u));
        d["beta_graph"] = to_fraction(beta.graph);
        d["beta_proposition"] = to_fraction(beta.proposition);
        d["beta_alpha_form"] = to_fraction(beta.alpha_form);
        return d;
    }

private:
    fermat::FermatModel model_;
};

}  // namespace

PYBIND11_MODULE(_ffk, m)
{
    m.doc() = "Exact arithmetic on the special fibers of Fermat curves";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ArithmeticError);

    m.def("double_roots", [](unsigned p) { return poly::double_roots(p).roots; }, py::arg("p"),
          "F_p-rational double roots of Psi mod p.");
    m.def("rho", [](unsigned p, unsigned mm) { return poly::rho(p, mm); }, py::arg("p"), py::arg("m"));
    m.def("fermat_split_check", [](unsigned p, unsigned mm) { return poly::fermat_split_check(p, mm); },
          py::arg("p"), py::arg("m"));

    py::class_<Model>(m, "Model")
        .def(py::init<long, long, std::optional<long>>(), py::arg("p"), py::arg("m"), py::arg("s") = py::none())
        .def_property_readonly("params", &Model::params_dict)
        .def("__len__", &Model::size)
        .def("census", &Model::census)
        .def("validate", &Model::validate)
        .def("cusp_values", &Model::cusp_values, py::arg("i") = 1, py::arg("k") = 1);

    m.def("factor", &bounds::factor_odd_squarefree, py::arg("N"));
    m.def("euler_phi", py::overload_cast<long>(&bounds::euler_phi), py::arg("N"));
    m.def("geometric_q", [](long N, long p) { return to_fraction(bounds::geometric_q(N, p)); });
    m.def("beta_sp", [](long N, long p) { return to_fraction(bounds::beta_sp_closed(N, p)); });
    m.def("alpha", [](long N, long p) { return to_int(bounds::alpha(N, p)); });
    m.def("geometric_contribution", [](long N) {
        const auto g = bounds::geometric_contribution(N);
        py::dict terms;
        for (const auto& t : g.terms) terms[py::int_(t.p)] = to_fraction(t.coefficient);
        return py::make_tuple(terms, g.total);
    });
    m.def("upper_bound", &bounds::upper_bound, py::arg("N"), py::arg("kappa1"), py::arg("kappa2"));
    m.def("lower_bound", &bounds::lower_bound, py::arg("N"));
    m.def("simple_lower", &bounds::simple_lower, py::arg("N"));
}
