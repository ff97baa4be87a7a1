"""
Display formatters for hypergraph summaries and analysis verdicts.
"""

from collections import Counter

from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from src.models.hypergraph import FRESH_PREFIX, Hypergraph
from src.models.report import VerdictRecord
from src.ui.styles import console, SYNTHWAVE_COLORS

VERDICT_STYLES = {
    "FEASIBLE_APPROX": SYNTHWAVE_COLORS["cyan"],
    "SAT": SYNTHWAVE_COLORS["cyan"],
    "FOUND": SYNTHWAVE_COLORS["cyan"],
    "OK": SYNTHWAVE_COLORS["cyan"],
    "ACCEPTED": SYNTHWAVE_COLORS["cyan"],
    "CERTIFIED_INFEASIBLE": SYNTHWAVE_COLORS["hot_pink"],
    "UNSAT": SYNTHWAVE_COLORS["hot_pink"],
    "LIKELY_INFEASIBLE": SYNTHWAVE_COLORS["neon_yellow"],
    "INCONCLUSIVE": SYNTHWAVE_COLORS["neon_yellow"],
    "NOT_FOUND": SYNTHWAVE_COLORS["neon_yellow"],
}


def display_hypergraph_summary(h: Hypergraph, title: str = "Hypergraph") -> None:
    """Display vertex/edge counts and the edge size distribution."""
    table = Table(
        title=f"[bold #00D9FF]{title}[/bold #00D9FF]",
        border_style="#FF10F0",
        header_style="bold #7928CA",
        show_lines=True,
    )

    table.add_column("Edge size", justify="right", style="#00D9FF")
    table.add_column("Edges", justify="right", style="#00F0FF")
    table.add_column("% of Edges", justify="right", style="#7928CA")

    sizes = Counter(len(edge) for edge in h.edges)
    for size, count in sorted(sizes.items()):
        percentage = count / h.num_edges * 100 if h.num_edges else 0
        table.add_row(str(size), str(count), f"{percentage:.1f}%")

    console.print(table)

    fresh = sum(1 for v in h.vertices if v.startswith(FRESH_PREFIX))
    console.print(
        Panel(
            Text.assemble(
                (str(h.num_vertices), f"bold {SYNTHWAVE_COLORS['cyan']}"),
                (" vertices", "white"),
                (f" ({fresh} gadget)" if fresh else "", "dim white"),
                (" and ", "white"),
                (str(h.num_edges), f"bold {SYNTHWAVE_COLORS['magenta']}"),
                (" edges", "white"),
            ),
            border_style="#00D9FF",
        )
    )


def display_verdicts(records: list[VerdictRecord], sources: list[str] | None = None) -> None:
    """Display one row per verdict with its parameters."""
    table = Table(
        title="[bold #00D9FF]Analysis Summary[/bold #00D9FF]",
        border_style="#FF10F0",
        header_style="bold #7928CA",
    )

    table.add_column("#", style="dim", width=4)
    if sources:
        table.add_column("Input", style="#00D9FF", max_width=40)
    table.add_column("Module", style="#7928CA")
    table.add_column("Verdict", justify="center")
    table.add_column("Parameters", style="#00F0FF")

    for i, record in enumerate(records, 1):
        color = VERDICT_STYLES.get(record.verdict, "white")
        parameters = " ".join(f"{k}={v}" for k, v in record.parameters.items())
        row = [str(i)]
        if sources:
            row.append(sources[i - 1])
        row += [record.module, f"[bold {color}]{record.verdict}[/bold {color}]", parameters]
        table.add_row(*row)

    console.print(table)
