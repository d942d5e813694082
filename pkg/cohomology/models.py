from django.db import models


class RunRecord(models.Model):
    """One stored command run and its report"""
    command = models.CharField(max_length=50)
    input_digest = models.CharField(max_length=64)
    flags = models.JSONField(default=dict)
    report = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        return f'{self.command} {self.input_digest[:12]} ({self.created_at:%Y-%m-%d %H:%M})'
