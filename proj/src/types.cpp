#include "dnls/types.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dnls/cauchy.hpp"

namespace dnls {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void DiscreteSpectrum::validate() const {
    for (size_t k = 0; k < pairs.size(); ++k) {
        if (!(pairs[k].lambda.imag() > 0.0))
            throw invalid_data_error("DiscreteSpectrum: eigenvalues must lie in C^+");
        if (std::abs(pairs[k].C) == 0.0)
            throw invalid_data_error("DiscreteSpectrum: norming constants must be nonzero");
        for (size_t j = 0; j < k; ++j)
            if (std::abs(pairs[k].lambda - pairs[j].lambda) < 1e-12)
                throw invalid_data_error("DiscreteSpectrum: eigenvalues must be distinct");
    }
}

ReflectionCoefficient::ReflectionCoefficient(ComplexGrid1D g, int eps)
    : grid(std::move(g)), epsilon(eps) {
    if (epsilon != 1 && epsilon != -1)
        throw invalid_data_error("ReflectionCoefficient: epsilon must be +-1");
    for (int i = 0; i < grid.n; ++i)
        if (!(constraint_at(i) > 0.0))
            throw invalid_data_error("ReflectionCoefficient: 1 - eps*lam*|rho|^2 must stay positive");
}

double ReflectionCoefficient::constraint_at(int i) const {
    const double lam = grid.node(i);
    const double r2 = std::norm(grid.values[static_cast<size_t>(i)]);
    return 1.0 - epsilon * lam * r2;
}

ScatteringData::ScatteringData(ReflectionCoefficient r, DiscreteSpectrum d, int eps)
    : rho(std::move(r)), discrete(std::move(d)), epsilon(eps) {
    if (epsilon != rho.epsilon)
        throw invalid_data_error("ScatteringData: epsilon mismatch with reflection coefficient");
}

ReflectionCoefficient zero_reflection(int epsilon, double lam_min, double lam_max, int n) {
    return ReflectionCoefficient(ComplexGrid1D(lam_min, lam_max, n), epsilon);
}

ScatteringData flow(const ScatteringData& data, double t) {
    ScatteringData out = data;
    for (int i = 0; i < out.rho.grid.n; ++i) {
        const double lam = out.rho.grid.node(i);
        out.rho.grid.values[static_cast<size_t>(i)] *= std::exp(cplx(0.0, -4.0 * lam * lam * t));
    }
    for (EigenPair& p : out.discrete.pairs) p.C *= std::exp(cplx(0.0, -4.0) * p.lambda * p.lambda * t);
    return out;
}

namespace {

Potential gauge_apply(const Potential& in, double phase_sign) {
    ComplexGrid1D mag2(in.grid.x_min, in.grid.x_max, in.grid.n);
    for (int i = 0; i < in.grid.n; ++i)
        mag2.values[static_cast<size_t>(i)] = std::norm(in.grid.values[static_cast<size_t>(i)]);
    const std::vector<cplx> cum = cumulative_trapezoid(mag2);
    Potential out = in;
    for (int i = 0; i < in.grid.n; ++i) {
        const double integral = cum[static_cast<size_t>(i)].real();
        out.grid.values[static_cast<size_t>(i)] =
            std::exp(cplx(0.0, phase_sign * in.epsilon * integral)) *
            in.grid.values[static_cast<size_t>(i)];
    }
    return out;
}

} // namespace

Potential gauge_forward(const Potential& u) { return gauge_apply(u, -1.0); }
Potential gauge_inverse(const Potential& q) { return gauge_apply(q, +1.0); }

namespace {

// log(1 - eps*s*|rho(s)|^2) sampled on rho's grid.
ComplexGrid1D log_constraint_grid(const ReflectionCoefficient& rho) {
    ComplexGrid1D g(rho.grid.x_min, rho.grid.x_max, rho.grid.n);
    for (int i = 0; i < rho.grid.n; ++i) {
        const double s = rho.grid.node(i);
        g.values[static_cast<size_t>(i)] =
            std::log1p(-rho.epsilon * s * std::norm(rho.grid.values[static_cast<size_t>(i)]));
    }
    return g;
}

} // namespace

cplx trace_alpha(const ScatteringData& data, cplx lam) {
    if (!(lam.imag() < 0.0)) throw domain_error("trace_alpha: requires Im lam < 0");
    if (std::abs(lam.imag()) < data.rho.grid.h() / 10.0)
        throw contour_proximity_error("trace_alpha: lam too close to the real axis");
    cplx blaschke = 1.0;
    for (const EigenPair& p : data.discrete.pairs)
        blaschke *= (lam - std::conj(p.lambda)) / (lam - p.lambda);
    const ComplexGrid1D g = log_constraint_grid(data.rho);
    // (1/2 pi i) int g(s)/(s - lam) ds  is exactly the Cauchy transform of g
    const cplx integral = cauchy_integral(g, lam);
    return blaschke * std::exp(integral);
}

cplx trace_alpha_breve(const ScatteringData& data, cplx lam) {
    if (!(lam.imag() > 0.0)) throw domain_error("trace_alpha_breve: requires Im lam > 0");
    cplx blaschke = 1.0;
    for (const EigenPair& p : data.discrete.pairs)
        blaschke *= (lam - p.lambda) / (lam - std::conj(p.lambda));
    const ComplexGrid1D g = log_constraint_grid(data.rho);
    return blaschke * std::exp(-cauchy_integral(g, lam));
}

std::pair<cplx, cplx> plancherel_sides(const Potential& q, const ScatteringData& data) {
    ComplexGrid1D mag2(q.grid.x_min, q.grid.x_max, q.grid.n);
    for (int i = 0; i < q.grid.n; ++i)
        mag2.values[static_cast<size_t>(i)] = std::norm(q.grid.values[static_cast<size_t>(i)]);
    const cplx lhs = std::exp(cplx(0.0, 1.0) * static_cast<double>(q.epsilon) * trapezoid(mag2));

    double arg_sum = 0.0;
    for (const EigenPair& p : data.discrete.pairs) arg_sum += std::arg(p.lambda);

    // integrand log(1 - eps*lam*|rho|^2)/lam is finite at lam = 0
    const ComplexGrid1D g = log_constraint_grid(data.rho);
    ComplexGrid1D integrand(g.x_min, g.x_max, g.n);
    for (int i = 0; i < g.n; ++i) {
        const double lam = g.node(i);
        if (std::abs(lam) < 1e-12) {
            const cplx rho0 = interp_cubic(data.rho.grid, 0.0);
            integrand.values[static_cast<size_t>(i)] = -data.epsilon * std::norm(rho0);
        } else {
            integrand.values[static_cast<size_t>(i)] = g.values[static_cast<size_t>(i)] / lam;
        }
    }
    const cplx rhs =
        std::exp(cplx(0.0, -4.0 * arg_sum) - cplx(0.0, 1.0 / kPi) * trapezoid(integrand));
    return {lhs, rhs};
}

// --- serialization -------------------------------------------------------

namespace {
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace

std::string scattering_to_json(const ScatteringData& data) {
    nlohmann::ordered_json j;
    j["epsilon"] = data.epsilon;
    nlohmann::ordered_json rho;
    rho["lam_min"] = data.rho.grid.x_min;
    rho["lam_max"] = data.rho.grid.x_max;
    rho["n"] = data.rho.grid.n;
    std::vector<double> re, im;
    re.reserve(data.rho.grid.values.size());
    im.reserve(data.rho.grid.values.size());
    for (const cplx& v : data.rho.grid.values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    rho["re"] = re;
    rho["im"] = im;
    j["rho"] = rho;
    nlohmann::ordered_json disc = nlohmann::ordered_json::array();
    for (const EigenPair& p : data.discrete.pairs) {
        nlohmann::ordered_json e;
        e["lambda"] = {p.lambda.real(), p.lambda.imag()};
        e["C"] = {p.C.real(), p.C.imag()};
        disc.push_back(e);
    }
    j["discrete"] = disc;
    return j.dump(2) + "\n";
}

ScatteringData scattering_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int eps = j.at("epsilon").get<int>();
    const auto& rj = j.at("rho");
    ComplexGrid1D g(rj.at("lam_min").get<double>(), rj.at("lam_max").get<double>(),
                    rj.at("n").get<int>());
    const auto re = rj.at("re").get<std::vector<double>>();
    const auto im = rj.at("im").get<std::vector<double>>();
    if (re.size() != g.values.size() || im.size() != g.values.size())
        throw invalid_data_error("scattering_from_json: rho array length mismatch");
    for (size_t i = 0; i < re.size(); ++i) g.values[i] = cplx(re[i], im[i]);
    std::vector<EigenPair> pairs;
    for (const auto& e : j.at("discrete")) {
        const auto lam = e.at("lambda").get<std::vector<double>>();
        const auto c = e.at("C").get<std::vector<double>>();
        pairs.push_back({cplx(lam.at(0), lam.at(1)), cplx(c.at(0), c.at(1))});
    }
    return ScatteringData(ReflectionCoefficient(std::move(g), eps), DiscreteSpectrum(std::move(pairs)),
                          eps);
}

std::string potential_to_csv(const Potential& q) {
    std::string out = "x,re_q,im_q\n";
    for (int i = 0; i < q.grid.n; ++i) {
        const cplx v = q.grid.values[static_cast<size_t>(i)];
        out += fmt17(q.grid.node(i)) + "," + fmt17(v.real()) + "," + fmt17(v.imag()) + "\n";
    }
    return out;
}

Potential potential_from_csv(const std::string& text, int epsilon) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw invalid_data_error("potential_from_csv: empty input");
    std::vector<double> xs;
    std::vector<cplx> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
            throw invalid_data_error("potential_from_csv: malformed row: " + line);
        xs.push_back(x);
        vals.push_back(cplx(re, im));
    }
    if (xs.size() < 2) throw invalid_data_error("potential_from_csv: need at least 2 rows");
    return Potential(ComplexGrid1D(xs.front(), xs.back(), std::move(vals)), epsilon);
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    out << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace dnls
