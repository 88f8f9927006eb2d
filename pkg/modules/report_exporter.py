"""
Comparison reports for RidgeRunner planner variants.
Renders the metric table (rows = metrics, columns = variants) as plain text and PDF.
"""
from io import BytesIO

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4, landscape
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import mm
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from utils.geometry import format_metric

METRIC_LABELS = {
    'success_rate': 'Success rate',
    'avg_vibration': 'Avg. vibration',
    'avg_speed': 'Avg. speed (m/s)',
    'norm_traj_length': 'Norm. traj. length',
}


def table_cells(table):
    """Header row plus one formatted row per metric."""
    cells = [['Metric'] + list(table['columns'])]
    for name, values in table['rows']:
        cells.append([METRIC_LABELS.get(name, name)] + [format_metric(value) for value in values])
    return cells


def format_comparison_text(table, title=None):
    """
    Fixed-width text rendering of a comparison table.

    Args:
        table: Output of metrics_table
        title: Optional heading line

    Returns:
        str: Table text ending in a newline
    """
    cells = table_cells(table)
    widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
    lines = []
    if title:
        lines.append(title)
    for index, row in enumerate(cells):
        lines.append('  '.join(cell.ljust(width) if i == 0 else cell.rjust(width)
                               for i, (cell, width) in enumerate(zip(row, widths))).rstrip())
        if index == 0:
            lines.append('  '.join('-' * width for width in widths))
    return '\n'.join(lines) + '\n'


def generate_comparison_pdf(table, scenario_name, seed, episodes):
    """
    Generate a PDF report of a variant comparison.

    Args:
        table: Output of metrics_table
        scenario_name: Scenario shared by the compared runs
        seed: Shared base seed
        episodes: Shared episode count

    Returns:
        bytes: PDF data (identical for identical input)
    """
    buffer = BytesIO()

    doc = SimpleDocTemplate(
        buffer,
        pagesize=landscape(A4),
        rightMargin=15*mm,
        leftMargin=15*mm,
        topMargin=15*mm,
        bottomMargin=15*mm,
        title='RidgeRunner variant comparison',
        invariant=1
    )

    elements = []

    styles = getSampleStyleSheet()
    title_style = ParagraphStyle(
        'CustomTitle',
        parent=styles['Heading1'],
        fontSize=22,
        textColor=colors.HexColor('#2c5f2d'),
        spaceAfter=12,
        alignment=TA_CENTER
    )
    normal_style = styles['Normal']

    elements.append(Paragraph("RidgeRunner - Variant Comparison", title_style))
    elements.append(Paragraph(f"Scenario: {scenario_name}", normal_style))
    elements.append(Paragraph(f"Seed: {seed} &nbsp;&nbsp; Episodes per variant: {episodes}", normal_style))
    elements.append(Spacer(1, 12))

    cells = table_cells(table)
    metric_width = 50*mm
    column_width = min(40*mm, (doc.width - metric_width) / max(len(cells[0]) - 1, 1))
    comparison = Table(cells, colWidths=[metric_width] + [column_width] * (len(cells[0]) - 1))
    comparison.setStyle(TableStyle([
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
        ('FONTNAME', (0, 1), (0, -1), 'Helvetica-Bold'),
        ('FONTNAME', (1, 1), (-1, -1), 'Helvetica'),
        ('FONTSIZE', (0, 0), (-1, -1), 10),
        ('TEXTCOLOR', (0, 0), (-1, -1), colors.black),
        ('ALIGN', (0, 0), (0, -1), 'LEFT'),
        ('ALIGN', (1, 0), (-1, -1), 'RIGHT'),
        ('LINEBELOW', (0, 0), (-1, 0), 1, colors.HexColor('#2c5f2d')),
        ('BOTTOMPADDING', (0, 0), (-1, -1), 6),
        ('TOPPADDING', (0, 0), (-1, -1), 6),
    ]))
    elements.append(comparison)
    elements.append(Spacer(1, 20))

    footer_style = ParagraphStyle(
        'Footer',
        parent=styles['Normal'],
        fontSize=8,
        textColor=colors.grey,
        alignment=TA_CENTER
    )
    elements.append(Paragraph("Vibration values come from the synthetic IMU and compare "
                              "only in ordering across variants.", footer_style))

    doc.build(elements)

    pdf = buffer.getvalue()
    buffer.close()

    return pdf
