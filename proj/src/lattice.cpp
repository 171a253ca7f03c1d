#include "invpdelta/lattice.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>

namespace invpdelta {

std::string to_string(Equation tag) {
    switch (tag) {
        case Equation::Heat: return "heat";
        case Equation::Burgers: return "burgers";
        case Equation::PotentialBurgers: return "potential_burgers";
        case Equation::Kdv: return "kdv";
        case Equation::WaveDemo: return "wave_demo";
    }
    return "?";
}

Equation equation_from_string(const std::string& name) {
    if (name == "heat") return Equation::Heat;
    if (name == "burgers") return Equation::Burgers;
    if (name == "potential_burgers") return Equation::PotentialBurgers;
    if (name == "kdv") return Equation::Kdv;
    if (name == "wave_demo") return Equation::WaveDemo;
    throw ConfigError("unknown equation tag: " + name);
}

MeshFunction MeshFunction::constant(double value) {
    MeshFunction f;
    f.eval_ = [value](int) { return value; };
    return f;
}

MeshFunction MeshFunction::affine(double slope, double intercept) {
    MeshFunction f;
    f.eval_ = [slope, intercept](int m) { return slope * m + intercept; };
    return f;
}

MeshFunction MeshFunction::tabulated(int m_first, std::vector<double> values) {
    MeshFunction f;
    f.eval_ = [m_first, values = std::move(values)](int m) {
        int i = m - m_first;
        if (i < 0 || i >= static_cast<int>(values.size()))
            throw BoundaryError("tabulated mesh function evaluated at m = " +
                                std::to_string(m) + ", outside its table");
        return values[static_cast<std::size_t>(i)];
    };
    return f;
}

MeshFunction MeshFunction::generic(std::function<double(int)> fn) {
    MeshFunction f;
    f.eval_ = std::move(fn);
    return f;
}

double MeshFunction::operator()(int m) const {
    if (!eval_) throw ConfigError("mesh function used before initialisation");
    return eval_(m);
}

MeshFunctions MeshFunctions::uniform(double h, double x0, double tau, double t0) {
    return {MeshFunction::affine(tau, t0), MeshFunction::constant(h),
            MeshFunction::constant(x0)};
}

MeshFunctions MeshFunctions::fundamental(double h, double x0, double tau,
                                         double t0) {
    return {MeshFunction::affine(tau, t0), MeshFunction::affine(h * tau, h * t0),
            MeshFunction::affine(x0 * tau, x0 * t0)};
}

MeshFunctions MeshFunctions::galilean(double h, double x0, double tau, double t0,
                                      double c) {
    return {MeshFunction::affine(tau, t0), MeshFunction::constant(h),
            MeshFunction::affine(2.0 * c * tau, x0 + 2.0 * c * t0)};
}

int stencil_point_count(StencilWidth w) {
    return w == StencilWidth::SixPoint ? 6 : 10;
}

namespace {

// Canonical point order -> (level, slot index). Level 0 is the lower layer.
struct SlotRef {
    int level;
    int idx;
};

SlotRef slot_ref(StencilWidth w, int i) {
    if (w == StencilWidth::SixPoint) {
        // (n-1, n, n+1) lower, then upper.
        static constexpr SlotRef refs[6] = {{0, 1}, {0, 2}, {0, 3},
                                            {1, 1}, {1, 2}, {1, 3}};
        return refs[i];
    }
    static constexpr SlotRef refs[10] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4},
                                         {1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}};
    return refs[i];
}

}  // namespace

void StencilView::finalize() {
    hp = x_lo[3] - x_lo[2];
    hm = x_lo[2] - x_lo[1];
    hpp = x_lo[4] - x_lo[3];
    hmm = x_lo[1] - x_lo[0];
    hhp = x_hi[3] - x_hi[2];
    hhm = x_hi[2] - x_hi[1];
    hhpp = x_hi[4] - x_hi[3];
    hhmm = x_hi[1] - x_hi[0];
    sigma = x_hi[2] - x_lo[2];
    sigma_p = x_hi[3] - x_lo[3];
    tau = t_hi[2] - t_lo[2];
    Tp = t_lo[3] - t_lo[2];
    Tm = t_lo[2] - t_lo[1];
}

StencilPoint StencilView::point(int i) const {
    if (i < 0 || i >= stencil_point_count(width))
        throw BoundaryError("stencil point index out of range");
    SlotRef r = slot_ref(width, i);
    if (r.level == 0) return {x_lo[r.idx], t_lo[r.idx], u_lo[r.idx]};
    return {x_hi[r.idx], t_hi[r.idx], u_hi[r.idx]};
}

StencilView StencilView::with_point(int i, const StencilPoint& p) const {
    if (i < 0 || i >= stencil_point_count(width))
        throw BoundaryError("stencil point index out of range");
    StencilView out = *this;
    SlotRef r = slot_ref(width, i);
    if (r.level == 0) {
        out.x_lo[r.idx] = p.x;
        out.t_lo[r.idx] = p.t;
        out.u_lo[r.idx] = p.u;
    } else {
        out.x_hi[r.idx] = p.x;
        out.t_hi[r.idx] = p.t;
        out.u_hi[r.idx] = p.u;
    }
    out.finalize();
    return out;
}

StencilView make_stencil(const StencilSpec& spec) {
    StencilView s;
    s.width = spec.width;
    s.x_lo[2] = spec.x;
    s.x_lo[3] = spec.x + spec.hp;
    s.x_lo[1] = spec.x - spec.hm;
    s.x_hi[2] = spec.x + spec.sigma;
    s.x_hi[3] = s.x_hi[2] + spec.hhp;
    s.x_hi[1] = s.x_hi[2] - spec.hhm;
    for (int k = 1; k <= 3; ++k) {
        s.t_lo[k] = spec.t;
        s.t_hi[k] = spec.t + spec.tau;
    }
    if (spec.width == StencilWidth::TenPoint) {
        s.x_lo[4] = s.x_lo[3] + spec.hpp;
        s.x_lo[0] = s.x_lo[1] - spec.hmm;
        s.x_hi[4] = s.x_hi[3] + spec.hhpp;
        s.x_hi[0] = s.x_hi[1] - spec.hhmm;
        s.t_lo[0] = s.t_lo[4] = spec.t;
        s.t_hi[0] = s.t_hi[4] = spec.t + spec.tau;
    }
    int np = stencil_point_count(spec.width);
    for (int i = 0; i < np; ++i) {
        SlotRef r = slot_ref(spec.width, i);
        double v = spec.u[static_cast<std::size_t>(i)];
        if (r.level == 0)
            s.u_lo[r.idx] = v;
        else
            s.u_hi[r.idx] = v;
    }
    s.finalize();
    return s;
}

MovingLattice::MovingLattice(Equation tag, IndexRange m_range, IndexRange n_range)
    : tag_(tag), m_range_(m_range), n_range_(n_range) {
    if (m_range.count() < 2 || n_range.count() < 3)
        throw MeshError("lattice window must hold at least 2 levels and 3 columns");
    x_ = Eigen::ArrayXXd::Constant(m_range.count(), n_range.count(),
                                   StencilView::kUnset);
    t_ = x_;
    u_ = x_;
}

int MovingLattice::mi(int m) const {
    if (!m_range_.contains(m))
        throw BoundaryError("time level m = " + std::to_string(m) +
                            " outside lattice window");
    return m - m_range_.lo;
}

int MovingLattice::ni(int n) const {
    if (!n_range_.contains(n))
        throw BoundaryError("column n = " + std::to_string(n) +
                            " outside lattice window");
    return n - n_range_.lo;
}

double MovingLattice::max_abs_u() const {
    double best = 0;
    for (Eigen::Index i = 0; i < u_.rows(); ++i)
        for (Eigen::Index j = 0; j < u_.cols(); ++j)
            if (!std::isnan(u_(i, j))) best = std::max(best, std::abs(u_(i, j)));
    return best;
}

MovingLattice build_lattice(Equation tag, const MeshFunctions& mesh,
                            IndexRange m_range, IndexRange n_range,
                            const std::function<double(double, double)>& u_init) {
    MovingLattice lat(tag, m_range, n_range);
    for (int m = m_range.lo; m <= m_range.hi; ++m) {
        double t = mesh.gamma(m);
        double h = mesh.hstep(m);
        double x0 = mesh.xorigin(m);
        if (!(h > 0))
            throw MeshError("hstep(" + std::to_string(m) + ") = " +
                            std::to_string(h) + " must be positive");
        if (m > m_range.lo) {
            double dt = t - mesh.gamma(m - 1);
            if (!(dt > 0))
                throw MeshError("gamma must be strictly increasing; step at m = " +
                                std::to_string(m) + " is " + std::to_string(dt));
        }
        for (int n = n_range.lo; n <= n_range.hi; ++n) {
            double x = h * n + x0;
            lat.set_x(m, n, x);
            lat.set_t(m, n, t);
            if (u_init) lat.set_u(m, n, u_init(x, t));
        }
    }
    return lat;
}

bool flat_time_layers(const MovingLattice& lat) {
    for (int m = lat.m_range().lo; m <= lat.m_range().hi; ++m) {
        double t0 = lat.t(m, lat.n_range().lo);
        for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n)
            if (lat.t(m, n) != t0) return false;
    }
    return true;
}

void check_mesh_monotone(const MovingLattice& lat) {
    for (int m = lat.m_range().lo; m <= lat.m_range().hi; ++m)
        for (int n = lat.n_range().lo; n < lat.n_range().hi; ++n)
            if (!(lat.x(m, n + 1) > lat.x(m, n)))
                throw MeshError("x not strictly increasing at m = " +
                                std::to_string(m) + ", n = " + std::to_string(n));
    for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n)
        for (int m = lat.m_range().lo; m < lat.m_range().hi; ++m)
            if (!(lat.t(m + 1, n) > lat.t(m, n)))
                throw MeshError("t not strictly increasing at m = " +
                                std::to_string(m) + ", n = " + std::to_string(n));
}

StencilView stencil_at(const MovingLattice& lat, int m, int n, StencilWidth w) {
    int reach = w == StencilWidth::SixPoint ? 1 : 2;
    if (m + 1 > lat.m_range().hi)
        throw BoundaryError("stencil at the last stored time level");
    if (!lat.m_range().contains(m))
        throw BoundaryError("stencil level m outside window");
    if (n - reach < lat.n_range().lo || n + reach > lat.n_range().hi)
        throw BoundaryError("stencil columns outside window at n = " +
                            std::to_string(n));
    StencilView s;
    s.width = w;
    for (int k = -reach; k <= reach; ++k) {
        s.x_lo[k + 2] = lat.x(m, n + k);
        s.t_lo[k + 2] = lat.t(m, n + k);
        s.u_lo[k + 2] = lat.u(m, n + k);
        s.x_hi[k + 2] = lat.x(m + 1, n + k);
        s.t_hi[k + 2] = lat.t(m + 1, n + k);
        s.u_hi[k + 2] = lat.u(m + 1, n + k);
    }
    if (m - 1 >= lat.m_range().lo) {
        s.has_prev_time = true;
        s.t_prev = lat.t(m - 1, n);
    }
    s.finalize();
    return s;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(const MovingLattice& lat, std::ostream& out) {
    out << "m,n,t,x,u\n";
    for (int m = lat.m_range().lo; m <= lat.m_range().hi; ++m)
        for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n)
            out << m << ',' << n << ',' << format_double(lat.t(m, n)) << ','
                << format_double(lat.x(m, n)) << ','
                << format_double(lat.u(m, n)) << '\n';
}

void write_csv_file(const MovingLattice& lat, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    write_csv(lat, out);
}

MovingLattice read_csv(std::istream& in, Equation tag) {
    std::string line;
    if (!std::getline(in, line)) throw MeshError("empty CSV input");
    // Header tolerated with or without spaces.
    struct Row {
        double t, x, u;
    };
    std::map<std::pair<int, int>, Row> rows;
    int m_lo = 0, m_hi = 0, n_lo = 0, n_hi = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string, 5> fields;
        std::size_t pos = 0;
        for (int f = 0; f < 5; ++f) {
            std::size_t next = line.find(',', pos);
            if (f < 4 && next == std::string::npos)
                throw MeshError("malformed CSV row: " + line);
            fields[f] = line.substr(pos, next - pos);
            pos = next + 1;
        }
        // strtod accepts "nan" for unset u; iostream extraction would not.
        int m = std::stoi(fields[0]);
        int n = std::stoi(fields[1]);
        Row r{};
        r.t = std::strtod(fields[2].c_str(), nullptr);
        r.x = std::strtod(fields[3].c_str(), nullptr);
        r.u = std::strtod(fields[4].c_str(), nullptr);
        rows[{m, n}] = r;
        if (first) {
            m_lo = m_hi = m;
            n_lo = n_hi = n;
            first = false;
        } else {
            m_lo = std::min(m_lo, m);
            m_hi = std::max(m_hi, m);
            n_lo = std::min(n_lo, n);
            n_hi = std::max(n_hi, n);
        }
    }
    if (first) throw MeshError("CSV input holds no points");
    IndexRange mr{m_lo, m_hi}, nr{n_lo, n_hi};
    if (static_cast<int>(rows.size()) != mr.count() * nr.count())
        throw MeshError("CSV points do not form a full rectangular window");
    MovingLattice lat(tag, mr, nr);
    for (const auto& [key, r] : rows) {
        lat.set_t(key.first, key.second, r.t);
        lat.set_x(key.first, key.second, r.x);
        lat.set_u(key.first, key.second, r.u);
    }
    return lat;
}

MovingLattice read_csv_file(const std::string& path, Equation tag) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return read_csv(in, tag);
}

}  // namespace invpdelta
