from unsharpseq import ExperimentPlan, History, ProtocolConfig, chsh_closed_form, estimate_chsh, max_sharpness, \
    min_entropy_bound, respond, run_branch, schmidt_decompose, simulate_counts, trace_params
from unsharpseq.color import Color, color_print


config = ProtocolConfig([0.34, 0.19, 0])  # The three-step experiment
plan = ExperimentPlan(pairs_per_config=30_000, seed=7, visibility_z=0.99, visibility_x=0.98)


def report(text: str) -> None:
    history = History.parse(text)
    step = trace_params(config, history)[-1]  # Parameters of the step this branch leads to
    state, _ = run_branch(config, history)  # The same branch with explicit state vectors
    s_value = chsh_closed_form(step.eta, step.mu)
    estimate = estimate_chsh(simulate_counts(step, plan, stream=(len(history),)))
    color_print(
        Color(f"[{history.render()}]", color="blue"),
        f"eta = {step.eta:.2f} (Schmidt: {schmidt_decompose(state).eta:.2f}) - - mu_max = {max_sharpness(step.eta):.3f} - -",
        f"S = {s_value:.2f}, measured",
        Color(f"{estimate.value:.3f} +/- {estimate.std_dev:.3f}", color="green" if estimate.value > 2 else "red"),
        f"- - min-entropy {min_entropy_bound(s_value) if s_value >= 2 else 0.0:.3f} bits"
    )


if __name__ == "__main__":
    for branch in ["not applicable", "+1|0", "+1|0; -1|0", "+1|0; +1|0", "-1|1; +1|1"]:
        report(branch)
    print(respond.render([step.as_dict() for step in trace_params(config, History.parse("-1|0; -1|0"))],
                         header=("eta", "alpha", "beta", "theta", "mu")))
