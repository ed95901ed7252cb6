#pragma once

#include "contactlab/chords.hpp"
#include "contactlab/curve.hpp"
#include "contactlab/hamiltonian.hpp"

#include <optional>

namespace contactlab {

struct FlowOptions {
    double steps_per_unit = 10000; // fixed-step RK4
    double monitor_tol = 1e-6;     // Richardson local error bound
    int monitor_stride = 16;       // monitored steps
    bool variational = true;       // carry the linearized flow for pullback checks
};

struct FlowStats {
    long steps = 0;
    double max_local_error = 0.0;
};

struct FlowedPoint {
    Vec point;
    // Pullback of alpha along the linearized flow must be proportional to
    // alpha: residual is the largest value on the contact-frame vectors, the
    // factor is log alpha(Dphi R).
    double conformal_residual = 0.0;
    double conformal_factor_log = 0.0;
};

FlowedPoint flow_point(const ContactHamiltonian& h, const Vec& p, double t,
                       const FlowOptions& opts = {}, FlowStats* stats = nullptr);

struct CurveFlowResult {
    double time = 0.0;
    SpaceCurve mapped;
    std::vector<double> residuals;
    std::vector<double> factors_log;
    FlowStats stats;
};

CurveFlowResult flow_curve(const ContactHamiltonian& h, const SpaceCurve& c, double t,
                           const FlowOptions& opts = {}, int resolution = 0);

// min over samples of |det[c'(t) | R | X(c(t))]| / (|c'| |R| |X|); positive
// exactly when X avoids T L + <R> along the curve.
double tangency_margin(const ContactHamiltonian& h, const SpaceCurve& c, int samples = 4096);
double tangency_margin_field(const std::function<Vec(const Vec&)>& field, const SpaceCurve& c,
                             int samples = 4096);

struct Box {
    Vec lo, hi;
};

struct DisplacementRow {
    double time = 0.0;
    long chord_count = 0;
    double min_len = 0.0;
    double total_len = 0.0;
    long planar_hits = 0;
    double margin = 0.0;
    bool degenerate = false; // overlapping planar traces (chords ill-posed)
    bool disjoint = false;
};

struct DisplacementResult {
    std::vector<DisplacementRow> rows;
    double margin = 0.0;
    std::optional<double> first_disjoint_time;
    std::optional<double> energy_upper_bound; // min over disjoint rows of t * osc
};

DisplacementResult displacement_experiment(const ContactHamiltonian& h, const SpaceCurve& c,
                                           const std::vector<double>& times,
                                           const FlowOptions& opts = {},
                                           const std::optional<Box>& norm_box = {},
                                           int resolution = 512);

std::string displacement_csv(const DisplacementResult& r);

struct NormReport {
    double osc_norm = 0.0;      // int (max - min) ds
    double positive_norm = 0.0; // int max ds
    double min_integral = 0.0;  // int min ds
    Box box;
    int resolution = 0;   // intervals per axis (node grids nest under doubling)
    int time_samples = 1; // trapezoid nodes for time-dependent fields
    double refinement_error = 0.0; // change from the half-resolution grid
};

NormReport hofer_osc_norm(const ContactHamiltonian& h, const Box& box, int resolution,
                          int time_samples = 64);

} // namespace contactlab
