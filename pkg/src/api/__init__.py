"""FastAPI service exposing the sandbox tools and the plan evaluator."""
