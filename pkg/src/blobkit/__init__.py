"""Pure Gaussian states from partially saturated uncertainty relations."""
