import { ConfigError } from "./errors.js";

/**
 * Selection tunables, field-for-field the core's config with identical
 * defaults.  Validation happens at the boundary so a bad value fails in
 * the caller's runtime rather than as a subprocess error.
 */
export interface BindingConfig {
  epsilon: number;
  tau: number;
  lambda_min: number;
  lambda_max: number;
  alpha_cv: number;
  rho_cap: number;
  delta_cv: number;
  /** "auto" lets the gate decide; "rd" bypasses it; "diversity" forces the fallback. */
  force_mode: "auto" | "rd" | "diversity";
  /** Fixed diversity weight, replacing the adaptive schedule (ablations). */
  lambda_fixed?: number;
  /** Row length when embeddings arrive as a flat typed array. */
  dim?: number;
  /** Command that launches the selector CLI. */
  cli?: string[];
}

export const DEFAULT_CONFIG: BindingConfig = {
  epsilon: 1e-6,
  tau: 0.4,
  lambda_min: 0.05,
  lambda_max: 0.6,
  alpha_cv: 2.0,
  rho_cap: 8,
  delta_cv: 1e-8,
  force_mode: "auto",
};

export function resolveConfig(overrides: Partial<BindingConfig> = {}): BindingConfig {
  const cfg: BindingConfig = { ...DEFAULT_CONFIG, ...overrides };
  if (cfg.epsilon <= 0) {
    throw new ConfigError(`epsilon must be positive, got ${cfg.epsilon}`);
  }
  if (!(cfg.tau >= 0 && cfg.tau <= 1)) {
    throw new ConfigError(`tau must lie in [0, 1], got ${cfg.tau}`);
  }
  if (!(cfg.lambda_min >= 0 && cfg.lambda_min <= cfg.lambda_max)) {
    throw new ConfigError(
      `need 0 <= lambda_min <= lambda_max, got (${cfg.lambda_min}, ${cfg.lambda_max})`,
    );
  }
  if (cfg.alpha_cv <= 0) {
    throw new ConfigError(`alpha_cv must be positive, got ${cfg.alpha_cv}`);
  }
  if (cfg.rho_cap <= 1) {
    throw new ConfigError(`rho_cap must exceed 1, got ${cfg.rho_cap}`);
  }
  if (cfg.delta_cv <= 0) {
    throw new ConfigError(`delta_cv must be positive, got ${cfg.delta_cv}`);
  }
  return cfg;
}
