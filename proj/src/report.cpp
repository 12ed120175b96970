#include "anafilt/report.hpp"

#include "anafilt/numfmt.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace anafilt {

namespace {

// The writer is hand-rolled so key order, layout, and number formatting
// are pinned down exactly; the parser reuses a real JSON library.

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x",
                              static_cast<unsigned>(ch));
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out;
}

void append_stage(std::string& out, const CascadeStage& stage,
                  const std::string& ind) {
    if (const auto* fo = std::get_if<FirstOrder>(&stage)) {
        out += ind + "{ \"type\": \"first_order\", \"w0\": " +
               sig9(fo->w0) + " }";
    } else {
        const auto& so = std::get<SecondOrder>(stage);
        out += ind + "{ \"type\": \"second_order\", \"a\": " + sig9(so.a) +
               ", \"b\": " + sig9(so.b) + " }";
    }
}

void append_tf(std::string& out, const TransferFunction& tf,
               const std::string& ind) {
    out += "{\n";
    out += ind + "  \"gain\": " + sig9(tf.gain) + ",\n";
    if (tf.stages.empty()) {
        out += ind + "  \"stages\": []\n";
    } else {
        out += ind + "  \"stages\": [\n";
        for (std::size_t i = 0; i < tf.stages.size(); ++i) {
            append_stage(out, tf.stages[i], ind + "    ");
            out += i + 1 < tf.stages.size() ? ",\n" : "\n";
        }
        out += ind + "  ]\n";
    }
    out += ind + "}";
}

void append_components(std::string& out,
                       const sallen_key::SallenKeyCascade& cascade) {
    out += "{\n";
    out += "    \"stages\": [\n";
    for (std::size_t i = 0; i < cascade.stages.size(); ++i) {
        const auto& stage = cascade.stages[i];
        if (const auto* rc = std::get_if<sallen_key::FirstOrderRC>(&stage)) {
            out += "      { \"type\": \"rc\", \"r_ohms\": " +
                   sig9(rc->r_ohms) + ", \"c_farads\": " +
                   sig9(rc->c_farads) + " }";
        } else {
            const auto& sk = std::get<sallen_key::SecondOrderSK>(stage);
            out += "      { \"type\": \"sallen_key\", \"r_ohms\": " +
                   sig9(sk.r_ohms) + ", \"c1_farads\": " +
                   sig9(sk.c1_farads) + ", \"c2_farads\": " +
                   sig9(sk.c2_farads) + " }";
        }
        out += i + 1 < cascade.stages.size() ? ",\n" : "\n";
    }
    out += "    ],\n";
    out += "    \"realized_tf\": ";
    append_tf(out, cascade.realized_tf, "    ");
    out += "\n  }";
}

TransferFunction tf_from_json(const nlohmann::json& j) {
    TransferFunction tf;
    tf.gain = j.at("gain").get<double>();
    for (const auto& s : j.at("stages")) {
        const auto type = s.at("type").get<std::string>();
        if (type == "first_order")
            tf.stages.push_back(FirstOrder{s.at("w0").get<double>()});
        else if (type == "second_order")
            tf.stages.push_back(SecondOrder{s.at("a").get<double>(),
                                            s.at("b").get<double>()});
        else
            throw std::invalid_argument("unknown stage type: " + type);
    }
    return tf;
}

std::string format_pole(const Complex& p) {
    const double im = p.imag();
    return sig9(p.real()) + (im < 0.0 ? " - j " : " + j ") +
           sig9(std::abs(im));
}

} // namespace

DesignReport build_report(const FilterSpecification& spec,
                          const FilterRealization& realization,
                          const TransferFunction& tf) {
    DesignReport report;
    report.spec = spec;
    report.family = realization.family;
    report.order = realization.order;
    report.char_freq = realization.char_freq;
    report.epsilon = realization.epsilon;
    report.poles = realization.poles;
    report.tf = tf;
    return report;
}

std::string report_to_json(const DesignReport& report) {
    std::string out;
    out += "{\n";
    out += "  \"spec\": {\n";
    out += "    \"ap_db\": " + sig9(report.spec.ap_db) + ",\n";
    out += "    \"omega_p\": " + sig9(report.spec.omega_p) + ",\n";
    out += "    \"as_db\": " + sig9(report.spec.as_db) + ",\n";
    out += "    \"omega_s\": " + sig9(report.spec.omega_s) + "\n";
    out += "  },\n";
    out += "  \"family\": \"" + std::string(family_name(report.family)) +
           "\",\n";
    out += "  \"order\": " + std::to_string(report.order) + ",\n";
    out += "  \"char_freq\": " + sig9(report.char_freq) + ",\n";
    out += "  \"epsilon\": " +
           (report.epsilon ? sig9(*report.epsilon) : std::string("null")) +
           ",\n";
    if (report.poles.empty()) {
        out += "  \"poles\": [],\n";
    } else {
        out += "  \"poles\": [\n";
        for (std::size_t i = 0; i < report.poles.size(); ++i) {
            out += "    [" + sig9(report.poles[i].real()) + ", " +
                   sig9(report.poles[i].imag()) + "]";
            out += i + 1 < report.poles.size() ? ",\n" : "\n";
        }
        out += "  ],\n";
    }
    out += "  \"tf\": ";
    append_tf(out, report.tf, "  ");
    out += ",\n";
    out += "  \"components\": ";
    if (report.components)
        append_components(out, *report.components);
    else
        out += "null";
    out += ",\n";
    if (report.notes.empty()) {
        out += "  \"notes\": []\n";
    } else {
        out += "  \"notes\": [\n";
        for (std::size_t i = 0; i < report.notes.size(); ++i) {
            out += "    \"" + json_escape(report.notes[i]) + "\"";
            out += i + 1 < report.notes.size() ? ",\n" : "\n";
        }
        out += "  ]\n";
    }
    out += "}\n";
    return out;
}

DesignReport report_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    DesignReport r;

    const auto& js = j.at("spec");
    r.spec = FilterSpecification{
        js.at("ap_db").get<double>(), js.at("omega_p").get<double>(),
        js.at("as_db").get<double>(), js.at("omega_s").get<double>()};

    const auto fam = j.at("family").get<std::string>();
    if (fam == family_name(Family::Butterworth))
        r.family = Family::Butterworth;
    else if (fam == family_name(Family::ChebyshevI))
        r.family = Family::ChebyshevI;
    else
        throw std::invalid_argument("unknown family: " + fam);

    r.order = j.at("order").get<int>();
    r.char_freq = j.at("char_freq").get<double>();
    if (!j.at("epsilon").is_null())
        r.epsilon = j.at("epsilon").get<double>();

    for (const auto& p : j.at("poles"))
        r.poles.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());

    r.tf = tf_from_json(j.at("tf"));

    if (!j.at("components").is_null()) {
        sallen_key::SallenKeyCascade cascade;
        for (const auto& s : j.at("components").at("stages")) {
            const auto type = s.at("type").get<std::string>();
            if (type == "rc")
                cascade.stages.emplace_back(sallen_key::FirstOrderRC{
                    s.at("r_ohms").get<double>(),
                    s.at("c_farads").get<double>()});
            else if (type == "sallen_key")
                cascade.stages.emplace_back(sallen_key::SecondOrderSK{
                    s.at("r_ohms").get<double>(),
                    s.at("c1_farads").get<double>(),
                    s.at("c2_farads").get<double>()});
            else
                throw std::invalid_argument(
                    "unknown component stage type: " + type);
        }
        cascade.realized_tf =
            tf_from_json(j.at("components").at("realized_tf"));
        r.components = std::move(cascade);
    }

    for (const auto& n : j.at("notes"))
        r.notes.push_back(n.get<std::string>());
    return r;
}

std::string report_to_text(const DesignReport& report) {
    std::string out;
    out += "family: " + std::string(family_name(report.family)) + "\n";
    out += "order: " + std::to_string(report.order) + "\n";
    out += "spec: Ap <= " + sig9(report.spec.ap_db) + " dB to " +
           sig9(report.spec.omega_p) + " rad/s, As >= " +
           sig9(report.spec.as_db) + " dB from " +
           sig9(report.spec.omega_s) + " rad/s\n";
    out += "characteristic frequency: " + sig9(report.char_freq) +
           " rad/s\n";
    if (report.epsilon)
        out += "ripple epsilon: " + sig9(*report.epsilon) + "\n";
    out += "poles (rad/s):\n";
    for (const Complex& p : report.poles)
        out += "  " + format_pole(p) + "\n";
    out += "gain: " + sig9(report.tf.gain) + "\n";
    out += "stages (ascending Q):\n";
    for (std::size_t i = 0; i < report.tf.stages.size(); ++i) {
        const CascadeStage& stage = report.tf.stages[i];
        out += "  " + std::to_string(i + 1) + ". ";
        if (const auto* fo = std::get_if<FirstOrder>(&stage))
            out += "first-order: w0 = " + sig9(fo->w0);
        else {
            const auto& so = std::get<SecondOrder>(stage);
            out += "second-order: a = " + sig9(so.a) + ", b = " + sig9(so.b);
        }
        out += ", Q = " + sig9(stage_q(stage)) + "\n";
    }
    if (report.components) {
        out += "components:\n";
        for (std::size_t i = 0; i < report.components->stages.size(); ++i) {
            const auto& stage = report.components->stages[i];
            out += "  " + std::to_string(i + 1) + ". ";
            if (const auto* rc =
                    std::get_if<sallen_key::FirstOrderRC>(&stage))
                out += "RC: R = " + sig9(rc->r_ohms) + " ohm, C = " +
                       sig9(rc->c_farads) + " F\n";
            else {
                const auto& sk =
                    std::get<sallen_key::SecondOrderSK>(stage);
                out += "Sallen-Key: R = " + sig9(sk.r_ohms) +
                       " ohm, C1 = " + sig9(sk.c1_farads) + " F, C2 = " +
                       sig9(sk.c2_farads) + " F\n";
            }
        }
    }
    if (!report.notes.empty()) {
        out += "notes:\n";
        for (const std::string& note : report.notes)
            out += "  - " + note + "\n";
    }
    return out;
}

} // namespace anafilt
