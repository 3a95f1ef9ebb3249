"""Bundled prompt templates and their loading.

Templates are plain-text files in this package with `$placeholder` fields. A
configured override directory replaces bundled templates file by file.
"""

from importlib import resources
from pathlib import Path
from string import Template

PROMPT_PACKAGE = "src.agents.prompts"

SYSTEM_PROMPTS = (
    "transport_expert",
    "hotel_expert",
    "restaurant_expert",
    "attraction_expert",
    "orchestrator",
    "plan_compiler",
    "plan_critic",
    "single_agent",
)
TURN_PROMPTS = (
    "expert_turn",
    "orchestrator_turn",
    "compiler_turn",
    "critic_turn",
    "single_agent_turn",
)


def load_template(name: str, prompt_dir: Path | None = None) -> str:
    """Raw template text, preferring `<prompt_dir>/<name>.txt` when it exists."""
    filename = f"{name}.txt"
    if prompt_dir is not None:
        override = Path(prompt_dir) / filename
        if override.is_file():
            return override.read_text(encoding="utf-8")
    try:
        return resources.files(PROMPT_PACKAGE).joinpath(filename).read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ValueError(f"Unknown prompt template: {name}") from e


def render_prompt(name: str, prompt_dir: Path | None = None, **values: str) -> str:
    """Fill a template's placeholders.

    Raises:
        ValueError: If the template needs a value that was not given
    """
    template = Template(load_template(name, prompt_dir))
    try:
        return template.substitute(values).strip()
    except KeyError as e:
        raise ValueError(f"Prompt template {name} needs a value for {e}") from e
